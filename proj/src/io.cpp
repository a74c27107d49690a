#include "kzero/io.hpp"

namespace kzero {

using nlohmann::ordered_json;

ordered_json vec_to_json(const Vec& v) {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) {
        if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
            out.push_back(x.str());
        else
            out.push_back(static_cast<long long>(x));
    }
    return out;
}

Vec vec_from_json(const ordered_json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of integers");
    Vec out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw std::invalid_argument("expected an array of integers");
        out.emplace_back(x.get<long long>());
    }
    return out;
}

ordered_json datum_to_json(const RootDatum& d) {
    ordered_json out;
    out["name"] = d.name();
    out["rank"] = d.rank();
    out["simple_roots"] = ordered_json::array();
    for (const auto& r : d.simple_roots()) out["simple_roots"].push_back(vec_to_json(r));
    out["simple_coroots"] = ordered_json::array();
    for (const auto& c : d.simple_coroots()) out["simple_coroots"].push_back(vec_to_json(c));
    return out;
}

namespace {

const ordered_json& field(const ordered_json& j, const char* key) {
    if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return *it;
}

std::vector<Vec> vec_list(const ordered_json& j, const char* key) {
    const auto& list = field(j, key);
    if (!list.is_array()) throw std::invalid_argument(std::string("field '") + key + "' must be an array");
    std::vector<Vec> out;
    try {
        for (const auto& v : list) out.push_back(vec_from_json(v));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("field '") + key + "': " + e.what());
    }
    return out;
}

}  // namespace

RootDatum datum_from_json(const ordered_json& j) {
    RootDatumData data;
    const auto& rank = field(j, "rank");
    if (!rank.is_number_unsigned()) throw std::invalid_argument("field 'rank' must be a nonnegative integer");
    data.rank = rank.get<std::size_t>();
    data.simple_roots = vec_list(j, "simple_roots");
    data.simple_coroots = vec_list(j, "simple_coroots");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw std::invalid_argument("field 'name' must be a string");
        data.name = j["name"].get<std::string>();
    }
    return RootDatum(std::move(data));
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string message = e.what();
        // drop the library prefix and its own position, which the caller reports
        if (auto pos = message.find("column "); pos != std::string::npos) {
            if (auto colon = message.find(": ", pos); colon != std::string::npos) message = message.substr(colon + 2);
        } else if (auto pe = message.find("parse error"); pe != std::string::npos) {
            message = message.substr(pe);
        }
        throw InputError(line, column, message);
    }
}

RootDatum parse_datum(const std::string& text) {
    ordered_json j = parse_json(text);
    try {
        return datum_from_json(j);
    } catch (const std::invalid_argument& e) {
        std::string message = e.what();
        std::size_t offset = 0;
        if (auto q = message.find('\''); q != std::string::npos) {
            auto q2 = message.find('\'', q + 1);
            if (auto at = text.find("\"" + message.substr(q + 1, q2 - q - 1) + "\""); at != std::string::npos)
                offset = at;
        }
        auto [line, column] = locate(text, offset);
        throw InputError(line, column, message);
    } catch (const InvalidRootDatum& e) {
        auto at = text.find("\"simple_roots\"");
        auto [line, column] = locate(text, at == std::string::npos ? 0 : at);
        throw InputError(line, column, std::string("invalid root datum: ") + e.what());
    }
}

}  // namespace kzero

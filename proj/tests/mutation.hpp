#pragma once

// Single-line corruption of a serialized product table, shared by the tests.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kzero::testing {

// Replaces one token of a random known product line, keeping the file well formed.
inline std::string mutate(const std::string& text, std::mt19937_64& rng, const std::vector<std::string>& labels) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    std::vector<std::size_t> prods;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (lines[i].rfind("prod ", 0) == 0 && lines[i].find('?') == std::string::npos) prods.push_back(i);
    std::string& line = lines[prods[rng() % prods.size()]];
    auto colon = line.find(" : ");
    std::string head = line.substr(0, colon + 3);
    std::vector<std::pair<std::string, long>> terms;
    std::istringstream rest(line.substr(colon + 3));
    for (std::string tok; rest >> tok;) {
        auto star = tok.find('*');
        terms.push_back({tok.substr(0, star), std::stol(tok.substr(star + 1))});
    }
    auto has = [&](const std::string& z) {
        for (const auto& [n, m] : terms)
            if (n == z) return true;
        return false;
    };
    switch (rng() % 4) {
        case 0: terms[rng() % terms.size()].second += 1; break;
        case 1:
            if (terms.size() > 1) {
                terms.erase(terms.begin() + static_cast<long>(rng() % terms.size()));
                break;
            }
            [[fallthrough]];
        case 2: {
            std::string z = labels[rng() % labels.size()];
            if (!has(z)) terms.push_back({z, 1});
            else terms.front().second += 1;
            break;
        }
        default: {
            std::string z = labels[rng() % labels.size()];
            if (!has(z)) terms[rng() % terms.size()].first = z;
            else terms.back().second += 2;
        }
    }
    std::sort(terms.begin(), terms.end());
    line = head;
    for (std::size_t i = 0; i < terms.size(); ++i) line += (i ? " " : "") + terms[i].first + "*" + std::to_string(terms[i].second);
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}


}  // namespace kzero::testing

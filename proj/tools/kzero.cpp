// Command-line front end: gen-oracle, reconstruct, verify, tensor, check-props.

#include "kzero/char_engine.hpp"
#include "kzero/io.hpp"
#include "kzero/oracle.hpp"
#include "kzero/polytope.hpp"
#include "kzero/reconstruction.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace kzero;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

/// Input problem reported as "where: message" with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(path + ": cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError(path + ": cannot write file");
    out << text;
}

RootDatum load_datum(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_datum(text);
    } catch (const InputError& e) {
        throw UsageError(path + ":" + e.what());
    }
}

OracleTable load_oracle(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_oracle(text);
    } catch (const OracleParseError& e) {
        throw UsageError(path + ":" + e.what());
    }
}

Weight parse_weight(const std::string& option, std::string text, std::size_t rank) {
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
    Weight w;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size())
            throw UsageError(option + ": column " + std::to_string(pos + 1) + ": expected an integer");
        w.emplace_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (w.size() != rank)
        throw UsageError(option + ": expected " + std::to_string(rank) + " coordinates, got " + std::to_string(w.size()));
    return w;
}

int gen_oracle(const std::string& datum_path, unsigned long bound, std::uint64_t seed, unsigned long horizon,
               const std::string& out, const std::string& provenance_path) {
    RootDatum d = load_datum(datum_path);
    if (bound < 1) throw UsageError("--bound: must be at least 1");
    auto m = materialize_oracle(d, bound, {seed, horizon});
    write_output(out, m.table.serialize());
    if (!provenance_path.empty()) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [label, w] : m.provenance) j[label] = vec_to_json(w);
        write_output(provenance_path, dump(j));
    }
    return kOk;
}

int reconstruct(const std::string& oracle_path, unsigned n_max, unsigned theta_depth, const std::string& out) {
    OracleTable t = load_oracle(oracle_path);
    ReconstructionParams params;
    params.n_max = n_max;
    params.theta_depth = theta_depth;
    auto report = recover_datum(t, params);
    write_output(out, report.to_json(t));
    if (!report.certified) {
        std::cerr << "reconstruction failed at stage " << report.failed_stage << ": " << report.reason;
        for (const auto& w : report.witnesses) std::cerr << " " << w;
        std::cerr << "\n";
        return kVerificationFailure;
    }
    if (!out.empty() && out != "-")
        std::cout << "certified rank=" << report.lattice.rank << " semisimple_rank=" << report.simple_roots.size()
                  << " weyl_order=" << report.weyl_order << "\n";
    return kOk;
}

int verify(const std::string& datum_path, const std::string& report_path) {
    RootDatum d = load_datum(datum_path);
    std::string text = read_file(report_path);
    std::optional<RootDatum> recovered;
    try {
        recovered = datum_from_report(text);
    } catch (const InputError& e) {
        throw UsageError(report_path + ":" + e.what());
    } catch (const std::exception& e) {
        throw UsageError(report_path + ": " + e.what());
    }
    if (!recovered) {
        std::cout << "not certified\n";
        return kVerificationFailure;
    }
    auto iso = root_data_isomorphic(d, *recovered);
    if (!iso) {
        std::cout << "not isomorphic\n";
        return kVerificationFailure;
    }
    std::cout << "isomorphic\n";
    return kOk;
}

int tensor(const std::string& datum_path, const std::string& left, const std::string& right) {
    RootDatum d = load_datum(datum_path);
    Weight a = parse_weight("--left", left, d.rank());
    Weight b = parse_weight("--right", right, d.rank());
    for (const auto& [option, w] : {std::pair{"--left", a}, std::pair{"--right", b}})
        if (!is_dominant(d, w)) throw UsageError(std::string(option) + ": weight " + to_string(w) + " is not dominant");
    std::cout << tensor_decompose(d, a, b).to_lines();
    return kOk;
}

bool same_coset(const RootDatum& d, const Weight& mu, const Weight& lambda) {
    auto coords = d.root_coordinates(sub(lambda, mu));
    if (!coords) return false;
    for (const auto& q : *coords)
        if (denominator(q) != 1) return false;
    return true;
}

int check_props(const std::string& datum_path, unsigned long max_coord, unsigned n_max, unsigned long prv_coord,
                unsigned cover_n) {
    RootDatum d = load_datum(datum_path);
    CharacterEngine e(d);
    bool ok = true;

    auto box = window_weights(d, max_coord);
    std::size_t pairs = 0, ab = 0, ac = 0;
    for (const auto& lambda : box) {
        TensorFactorCertificate cert(e, lambda);
        for (const auto& mu : box) {
            if (!same_coset(d, mu, lambda)) continue;
            ++pairs;
            bool a = dominance_leq(d, mu, lambda);
            ab += a != hull_contains_orbit(d, mu, lambda);
            ac += a != cert.accepts(mu, n_max);
        }
    }
    std::cout << "order (a)=(b): " << pairs << " pairs, " << ab << " disagreements\n";
    std::cout << "order (a)=(c) n<=" << n_max << ": " << pairs << " pairs, " << ac << " disagreements\n";
    ok = ok && ab == 0 && ac == 0;

    auto small = window_weights(d, prv_coord);
    std::size_t prv_pairs = 0, prv_failures = 0;
    for (const auto& a : small)
        for (const auto& b : small) {
            ++prv_pairs;
            SemiringElement t = e.tensor(a, b);
            for (const auto& p : e.prv_components(a, b))
                if (t.multiplicity(p) < 1) {
                    ++prv_failures;
                    break;
                }
        }
    std::cout << "prv components: " << prv_pairs << " pairs, " << prv_failures << " failures\n";
    ok = ok && prv_failures == 0;

    std::size_t checks = 0, pass = 0, fail = 0, skipped = 0;
    for (const auto& g : covering_seeds(e))
        for (unsigned n = 1; n <= cover_n; ++n) {
            ++checks;
            switch (quantized_cover_check(orbit(d, g), n).status) {
                case CoverVerdict::Status::Pass: ++pass; break;
                case CoverVerdict::Status::Fail: ++fail; break;
                case CoverVerdict::Status::Skipped: ++skipped; break;
            }
        }
    std::cout << "covering n<=" << cover_n << ": " << checks << " checks, " << pass << " pass, " << fail << " fail, "
              << skipped << " skipped\n";
    ok = ok && fail == 0;
    std::cout << "result: " << (ok ? "pass" : "fail") << "\n";
    return ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root data from representation semirings"};
    app.require_subcommand(1);

    std::string datum, oracle, out, report, provenance, left, right;
    unsigned long bound = 4, horizon = 0, max_coord = 5, prv_coord = 2;
    std::uint64_t seed = 1;
    unsigned n_max = 3, theta_depth = 2, cover_n = 6;

    auto* gen = app.add_subcommand("gen-oracle", "Materialize an opaque product table for a root datum");
    gen->add_option("--datum", datum, "Root datum JSON file")->required();
    gen->add_option("--bound", bound, "Window bound B")->envname("KZERO_BOUND");
    gen->add_option("--seed", seed, "Seed for opaque labels")->envname("KZERO_SEED");
    gen->add_option("--horizon", horizon, "Mark products beyond this pairing bound unknown (0 = none)")
        ->envname("KZERO_HORIZON");
    gen->add_option("--out", out, "Output file (default stdout)");
    gen->add_option("--provenance", provenance, "Also write the hidden label weights as JSON");

    auto* rec = app.add_subcommand("reconstruct", "Recover a root datum from a product table");
    rec->add_option("--oracle", oracle, "Oracle file")->required();
    rec->add_option("--n-max", n_max, "Replay depth for order certificates")->envname("KZERO_N_MAX");
    rec->add_option("--theta-depth", theta_depth, "Certificate depth")->envname("KZERO_THETA_DEPTH");
    rec->add_option("--out", out, "Report file (default stdout)");

    auto* ver = app.add_subcommand("verify", "Check a report against a root datum up to isomorphism");
    ver->add_option("--datum", datum, "Root datum JSON file")->required();
    ver->add_option("--report", report, "Report JSON file")->required();

    auto* ten = app.add_subcommand("tensor", "Decompose a tensor product of irreducibles");
    ten->add_option("--datum", datum, "Root datum JSON file")->required();
    ten->add_option("--left", left, "Highest weight, comma separated")->required();
    ten->add_option("--right", right, "Highest weight, comma separated")->required();

    auto* props = app.add_subcommand("check-props", "Order criteria, PRV and covering checks");
    props->add_option("--datum", datum, "Root datum JSON file")->required();
    props->add_option("--max-coord", max_coord, "Pairing bound for the order criteria")->envname("KZERO_MAX_COORD");
    props->add_option("--n-max", n_max, "Tensor-power bound for criterion (c)")->envname("KZERO_N_MAX");
    props->add_option("--prv-coord", prv_coord, "Pairing bound for the PRV check");
    props->add_option("--cover-n", cover_n, "Largest dilation for the covering check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*gen) return gen_oracle(datum, bound, seed, horizon, out, provenance);
        if (*rec) return reconstruct(oracle, n_max, theta_depth, out);
        if (*ver) return verify(datum, report);
        if (*ten) return tensor(datum, left, right);
        if (*props) return check_props(datum, max_coord, n_max, prv_coord, cover_n);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

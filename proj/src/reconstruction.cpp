#include "kzero/reconstruction.hpp"

#include "kzero/io.hpp"

#include <algorithm>
#include <array>

namespace kzero {

namespace {

std::vector<std::string> names(const OracleTable& t, std::initializer_list<LabelId> ids) {
    std::vector<std::string> out;
    for (LabelId id : ids) out.push_back(t.name(id));
    return out;
}

// Constituents of A * x, when every element of A is a window label whose product with x is known.
std::optional<std::set<LabelId>> times(const OracleTable& t, const std::set<LabelId>& a, LabelId x) {
    std::set<LabelId> out;
    for (LabelId y : a) {
        if (!t.in_window(y)) return std::nullopt;
        const ProductEntry* p = t.product(x, y);
        if (!p || !p->known) return std::nullopt;
        for (const auto& [z, m] : p->terms) out.insert(z);
    }
    return out;
}

std::optional<std::set<LabelId>> constituents(const OracleTable& t, LabelId x, LabelId y) {
    return times(t, {x}, y);
}

// Literal check of cons(mu^n) within cons(lambda^n theta) for n = 1, 2, ... while the table has
// the data. Returns the last n checked; throws when a check fails.
unsigned replay(const OracleTable& t, LabelId mu, LabelId lambda, const std::vector<LabelId>& theta, unsigned n_max) {
    std::optional<std::set<LabelId>> left = std::set<LabelId>{mu};
    std::optional<std::set<LabelId>> right = std::set<LabelId>{lambda};
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) {
            left = times(t, *left, mu);
            right = times(t, *right, lambda);
            if (!left || !right) return n - 1;
        }
        std::optional<std::set<LabelId>> full = right;
        for (LabelId f : theta) {
            if (!full) break;
            full = times(t, *full, f);
        }
        if (!full) return n - 1;
        for (LabelId z : *left)
            if (!full->count(z)) {
                auto w = names(t, {mu, lambda, z});
                w.push_back("n=" + std::to_string(n));
                throw ReconstructionError("order", "certificate replay failed", w);
            }
    }
    return n_max;
}

bool is_subset(const std::set<LabelId>& a, const std::set<LabelId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

OrderRelation RecoveredOrder::relation(LabelId mu, LabelId lambda) const {
    if (leq.count({mu, lambda})) return OrderRelation::Leq;
    if (not_leq.count({mu, lambda})) return OrderRelation::NotLeq;
    return OrderRelation::Unknown;
}

std::size_t RecoveredOrder::unknown_pairs(std::size_t window_size) const {
    return window_size * window_size - leq.size() - not_leq.size();
}

RecoveredOrder recover_order(const OracleTable& t, unsigned n_max, unsigned theta_depth) {
    if (auto v = validate_oracle(t); !v.ok) throw ReconstructionError("validate", v.axiom + ": " + v.detail, v.witnesses);
    RecoveredOrder order;
    order.n_max = n_max;
    order.theta_depth = theta_depth;
    const auto& window = t.window();

    for (LabelId x : window) order.leq[{x, x}] = {{t.unit()}, std::nullopt, replay(t, x, x, {t.unit()}, n_max)};

    if (theta_depth >= 2) {
        // constituent sets of x * nu for window labels
        std::map<std::pair<LabelId, LabelId>, std::set<LabelId>> cons;
        for (LabelId x : window)
            for (LabelId nu : window)
                if (auto c = constituents(t, x, nu)) cons.emplace(std::make_pair(x, nu), std::move(*c));
        for (LabelId mu : window)
            for (LabelId lambda : window) {
                if (mu == lambda) continue;
                for (LabelId nu : window) {
                    auto a = cons.find({mu, nu});
                    auto b = cons.find({lambda, nu});
                    if (a == cons.end() || b == cons.end() || !is_subset(a->second, b->second)) continue;
                    std::vector<LabelId> theta{nu, *t.dual(nu)};
                    order.leq[{mu, lambda}] = {theta, std::nullopt, replay(t, mu, lambda, theta, n_max)};
                    break;
                }
            }
        // transitive closure
        for (LabelId k : window)
            for (LabelId i : window) {
                if (!order.leq.count({i, k})) continue;
                for (LabelId j : window)
                    if (order.leq.count({k, j}) && !order.leq.count({i, j}))
                        order.leq[{i, j}] = {{}, k, 0};
            }
    }

    for (const auto& [pair, cert] : order.leq) {
        auto [mu, lambda] = pair;
        if (mu == lambda) continue;
        if (order.leq.count({lambda, mu}))
            throw ReconstructionError("order", "two distinct labels are mutually dominated", names(t, {mu, lambda}));
        order.not_leq.insert({lambda, mu});
    }
    return order;
}

std::optional<LabelId> RecoveredMonoid::add(LabelId x, LabelId y) const {
    auto it = sums.find(x <= y ? std::make_pair(x, y) : std::make_pair(y, x));
    if (it == sums.end()) return std::nullopt;
    return it->second;
}

RecoveredMonoid recover_addition(const OracleTable& t, const RecoveredOrder& order) {
    RecoveredMonoid m;
    m.zero = t.unit();
    const auto& window = t.window();
    for (std::size_t i = 0; i < window.size(); ++i)
        for (std::size_t j = i; j < window.size(); ++j) {
            LabelId x = window[i], y = window[j];
            const ProductEntry* p = t.product(x, y);
            if (!p || !p->known) continue;
            bool closed = std::all_of(p->terms.begin(), p->terms.end(), [&](const auto& term) { return t.in_window(term.first); });
            if (!closed) continue;
            std::optional<LabelId> top;
            for (const auto& [k, mult] : p->terms) {
                bool dominates = std::all_of(p->terms.begin(), p->terms.end(), [&](const auto& term) {
                    return order.relation(term.first, k) == OrderRelation::Leq;
                });
                if (dominates) {
                    top = k;
                    break;
                }
            }
            if (!top) {
                m.undecided.push_back({x, y});
                continue;
            }
            if (p->multiplicity(*top) != 1)
                throw ReconstructionError("addition", "the maximal constituent occurs more than once",
                                          names(t, {x, y, *top}));
            m.sums[{x, y}] = *top;
        }
    return m;
}

RecoveredLattice recover_lattice(const OracleTable& t, const RecoveredMonoid& m) {
    RecoveredLattice out;
    std::set<LabelId> core{m.zero}, results;
    std::vector<std::array<LabelId, 3>> identities;
    for (const auto& [pair, z] : m.sums) {
        if (pair.first == m.zero || pair.second == m.zero) continue;
        identities.push_back({pair.first, pair.second, z});
        core.insert({pair.first, pair.second, z});
        results.insert(z);
    }
    out.core.assign(core.begin(), core.end());
    for (LabelId x : out.core)
        if (x != m.zero && !results.count(x)) out.generators.push_back(x);

    std::map<LabelId, std::size_t> column;
    for (std::size_t c = 0; c < out.core.size(); ++c) column[out.core[c]] = c;
    const std::size_t cols = out.core.size();
    std::vector<Vec> rows;
    Vec zero_row(cols);
    zero_row[column[m.zero]] = 1;
    rows.push_back(zero_row);
    for (const auto& [x, y, z] : identities) {
        Vec row(cols);
        row[column[x]] += 1;
        row[column[y]] += 1;
        row[column[z]] -= 1;
        rows.push_back(row);
    }
    SmithForm snf = smith_normal_form(IntMatrix::from_rows(rows, cols));
    std::vector<std::string> torsion;
    for (const auto& d : snf.invariants)
        if (d != 1) torsion.push_back(d.str());
    if (!torsion.empty())
        throw ReconstructionError("lattice", "inconsistent oracle: the group completion has torsion", torsion);

    // x -> x V kills the relations; the trailing coordinates identify the completion with Z^rank.
    out.rank = cols - snf.rank;
    std::map<Vec, LabelId> seen;
    for (std::size_t c = 0; c < cols; ++c) {
        Vec row = snf.V.row(c);
        Vec coords(row.begin() + static_cast<std::ptrdiff_t>(snf.rank), row.end());
        if (auto [it, fresh] = seen.emplace(coords, out.core[c]); !fresh)
            throw ReconstructionError("lattice", "two labels have the same image in the completion",
                                      names(t, {it->second, out.core[c]}));
        out.embedding[out.core[c]] = std::move(coords);
    }
    return out;
}

namespace {

// Embedded constituents of x * x, when the line is known and every constituent is embedded.
std::optional<std::vector<Vec>> embedded_square(const OracleTable& t, const RecoveredLattice& lattice, LabelId x) {
    const ProductEntry* p = t.product(x, x);
    if (!p || !p->known) return std::nullopt;
    std::vector<Vec> out;
    for (const auto& [z, m] : p->terms) {
        auto it = lattice.embedding.find(z);
        if (it == lattice.embedding.end()) return std::nullopt;
        out.push_back(it->second);
    }
    return out;
}

// Whether v is a nonnegative integer combination of `gens`, given f with f . g >= 1 for every g.
bool in_monoid(const Vec& v, const std::vector<Vec>& gens, const Vec& f, std::set<Vec>& failed) {
    if (is_zero(v)) return true;
    if (dot(f, v) <= 0 || failed.count(v)) return false;
    for (const auto& g : gens)
        if (in_monoid(sub(v, g), gens, f, failed)) return true;
    failed.insert(v);
    return false;
}

}  // namespace

std::vector<Vec> recover_simple_roots(const OracleTable& t, const RecoveredLattice& lattice) {
    // 2 lambda - kappa over the embedded constituents kappa of lambda * lambda
    std::set<Vec> candidates;
    for (LabelId x : lattice.core) {
        const ProductEntry* p = t.product(x, x);
        if (!p || !p->known) continue;
        Vec twice = scale(Int(2), lattice.embedding.at(x));
        for (const auto& [z, m] : p->terms) {
            auto it = lattice.embedding.find(z);
            if (it == lattice.embedding.end()) continue;
            if (Vec c = sub(twice, it->second); !is_zero(c)) candidates.insert(c);
        }
    }
    if (candidates.empty()) return {};
    std::vector<Vec> gens(candidates.begin(), candidates.end());

    // a functional positive on every candidate (perceptron; candidates lie in a pointed cone)
    Vec f(lattice.rank);
    for (std::size_t round = 0;; ++round) {
        if (round > 100'000) throw ReconstructionError("roots", "candidates do not lie in an open half-space");
        bool changed = false;
        for (const auto& g : gens)
            if (dot(f, g) <= 0) {
                f = add(f, g);
                changed = true;
            }
        if (!changed) break;
    }

    std::vector<Vec> roots;
    std::set<Vec> failed;
    for (const auto& x : gens) {
        bool minimal = true;
        for (const auto& y : gens)
            if (y != x && in_monoid(sub(x, y), gens, f, failed)) {
                minimal = false;
                break;
            }
        if (minimal) roots.push_back(x);
    }
    if (rank(IntMatrix::from_rows(roots, lattice.rank)) != roots.size()) {
        std::vector<std::string> w;
        for (const auto& r : roots) w.push_back(to_string(r));
        throw ReconstructionError("roots", "minimal candidates are linearly dependent", w);
    }
    return roots;
}

std::vector<Vec> recover_simple_coroots(const OracleTable& t, const RecoveredLattice& lattice,
                                        const std::vector<Vec>& roots) {
    std::vector<Vec> coroots;
    for (const auto& alpha : roots) {
        // <alpha^, alpha> = 2, then one string length per fully embedded square
        std::vector<Vec> rows{alpha};
        Vec rhs{Int(2)};
        for (LabelId x : lattice.core) {
            auto square = embedded_square(t, lattice, x);
            if (!square) continue;
            std::set<Vec> present(square->begin(), square->end());
            Vec twice = scale(Int(2), lattice.embedding.at(x));
            Int m = 0;
            while (present.count(sub(twice, scale(m + 1, alpha)))) ++m;
            rows.push_back(lattice.embedding.at(x));
            rhs.push_back(m);
        }
        IntMatrix a = IntMatrix::from_rows(rows, lattice.rank);
        if (rank(a) < lattice.rank)
            throw ReconstructionError("coroots", "window too small to determine the coroot", {to_string(alpha)});
        auto solution = solve_integer(a, rhs);
        if (!solution)
            throw ReconstructionError("coroots", "no integral functional matches the reflection strings", {to_string(alpha)});
        coroots.push_back(solution->particular);
    }
    return coroots;
}

namespace {

struct Conflict {
    std::string reason;
    std::vector<std::string> witnesses;
};

class Placement {
public:
    Placement(const OracleTable& t, const CharacterEngine& e) : t_(t), e_(e) {}

    std::map<LabelId, Weight> weight;
    std::map<Weight, LabelId> label;
    std::optional<Conflict> conflict;

    bool assign(LabelId x, const Weight& w) {
        if (auto it = weight.find(x); it != weight.end()) {
            if (it->second == w) return true;
            return fail("label placed at two weights", {t_.name(x), to_string(it->second), to_string(w)});
        }
        if (!is_dominant(e_.datum(), w)) return fail("label placed at a non-dominant weight", {t_.name(x), to_string(w)});
        if (auto it = label.find(w); it != label.end())
            return fail("two labels placed at one weight", {t_.name(it->second), t_.name(x), to_string(w)});
        weight.emplace(x, w);
        label.emplace(w, x);
        changed_ = true;
        return true;
    }

    // Applies the forced placements until nothing changes; false on a contradiction.
    bool propagate() {
        do {
            changed_ = false;
            for (LabelId x = 0; x < t_.size(); ++x) {
                auto d = t_.dual(x);
                auto it = weight.find(x);
                if (d && it != weight.end() && !assign(*d, e_.dual_label(it->second))) return false;
            }
            for (const auto& [pair, entry] : t_.products()) {
                if (!entry.known) continue;
                auto [x, y] = pair;
                bool hx = weight.count(x), hy = weight.count(y);
                if (hx && hy) {
                    if (!check_line(x, y, entry)) return false;
                } else if (hx != hy) {
                    if (!solve_factor(hx ? y : x, hx ? x : y, entry)) return false;
                }
            }
        } while (changed_);
        return true;
    }

    // A line with both factors placed whose unplaced constituents admit several placements.
    std::optional<std::pair<LabelId, std::vector<Weight>>> branch_point() const {
        for (const auto& [pair, entry] : t_.products()) {
            if (!entry.known || !weight.count(pair.first) || !weight.count(pair.second)) continue;
            auto open = unplaced(pair.first, pair.second, entry);
            for (const auto& [x, m] : entry.terms) {
                if (weight.count(x)) continue;
                std::vector<Weight> options;
                for (const auto& [w, mw] : open)
                    if (mw == m) options.push_back(w);
                return std::make_pair(x, options);
            }
        }
        return std::nullopt;
    }

private:
    const OracleTable& t_;
    const CharacterEngine& e_;
    bool changed_ = false;

    bool fail(std::string reason, std::vector<std::string> witnesses) {
        conflict = Conflict{std::move(reason), std::move(witnesses)};
        return false;
    }

    // Terms of the predicted product not accounted for by placed constituents.
    std::map<Weight, Int> unplaced(LabelId x, LabelId y, const ProductEntry& entry) const {
        SemiringElement predicted = e_.tensor(weight.at(x), weight.at(y));
        std::map<Weight, Int> open(predicted.terms().begin(), predicted.terms().end());
        for (const auto& [z, m] : entry.terms)
            if (auto it = weight.find(z); it != weight.end()) open.erase(it->second);
        return open;
    }

    bool check_line(LabelId x, LabelId y, const ProductEntry& entry) {
        SemiringElement predicted = e_.tensor(weight.at(x), weight.at(y));
        std::map<Int, std::vector<LabelId>> free_labels;
        for (const auto& [z, m] : entry.terms) {
            auto it = weight.find(z);
            if (it == weight.end()) {
                free_labels[m].push_back(z);
            } else if (predicted.multiplicity(it->second) != m) {
                return fail("product line disagrees with the recovered datum",
                            {t_.name(x), t_.name(y), t_.name(z)});
            }
        }
        std::map<Int, std::vector<Weight>> free_weights;
        for (const auto& [w, m] : predicted.terms()) {
            auto it = label.find(w);
            if (it == label.end()) {
                free_weights[m].push_back(w);
            } else if (!entry.contains(it->second)) {
                return fail("product line misses a predicted constituent", {t_.name(x), t_.name(y), t_.name(it->second)});
            }
        }
        for (const auto& [m, labels] : free_labels) {
            auto it = free_weights.find(m);
            if (it == free_weights.end() || it->second.size() != labels.size())
                return fail("product line disagrees with the recovered datum", {t_.name(x), t_.name(y)});
        }
        if (free_labels.size() != free_weights.size())
            return fail("product line misses a predicted constituent", {t_.name(x), t_.name(y)});
        for (const auto& [m, labels] : free_labels)
            if (labels.size() == 1 && !assign(labels.front(), free_weights[m].front())) return false;
        return true;
    }

    // x unplaced, y placed, every constituent placed: x is the Cartan component minus y.
    bool solve_factor(LabelId x, LabelId y, const ProductEntry& entry) {
        SemiringElement line;
        for (const auto& [z, m] : entry.terms) {
            auto it = weight.find(z);
            if (it == weight.end()) return true;
            line.add(it->second, m);
        }
        std::vector<Weight> fits;
        for (const auto& [k, m] : line.terms()) {
            Weight w = sub(k, weight.at(y));
            if (is_dominant(e_.datum(), w) && !label.count(w) && e_.tensor(w, weight.at(y)) == line) fits.push_back(w);
        }
        if (fits.empty()) return fail("no weight fits the product line", {t_.name(x), t_.name(y)});
        if (fits.size() == 1) return assign(x, fits.front());
        return true;
    }
};

std::optional<Placement> search(Placement p, std::size_t& budget, std::optional<Conflict>& last) {
    if (budget == 0) throw ReconstructionError("certify", "placement search exhausted its budget");
    --budget;
    if (!p.propagate()) {
        last = p.conflict;
        return std::nullopt;
    }
    auto branch = p.branch_point();
    if (!branch) return p;
    for (const auto& w : branch->second) {
        Placement next = p;
        if (!next.assign(branch->first, w)) {
            last = next.conflict;
            continue;
        }
        if (auto done = search(std::move(next), budget, last)) return done;
    }
    return std::nullopt;
}

}  // namespace

std::map<LabelId, Weight> certify_table(const OracleTable& t, const RootDatum& d, const RecoveredLattice& lattice,
                                        std::size_t budget) {
    CharacterEngine e(d);
    Placement start(t, e);
    if (!start.assign(t.unit(), Weight(d.rank())))
        throw ReconstructionError("certify", start.conflict->reason, start.conflict->witnesses);
    for (const auto& [x, w] : lattice.embedding)
        if (!start.assign(x, w)) throw ReconstructionError("certify", start.conflict->reason, start.conflict->witnesses);
    std::optional<Conflict> last;
    auto done = search(std::move(start), budget, last);
    if (!done) {
        Conflict c = last.value_or(Conflict{"no consistent placement", {}});
        throw ReconstructionError("certify", c.reason, c.witnesses);
    }
    std::vector<std::string> missing;
    for (LabelId x = 0; x < t.size(); ++x)
        if (!done->weight.count(x)) missing.push_back(t.name(x));
    if (!missing.empty()) throw ReconstructionError("certify", "labels cannot be placed from the table", missing);
    return done->weight;
}

ReconstructionReport recover_datum(const OracleTable& t, const ReconstructionParams& params) {
    ReconstructionReport r;
    try {
        r.order = recover_order(t, params.n_max, params.theta_depth);
        r.monoid = recover_addition(t, r.order);
        r.lattice = recover_lattice(t, r.monoid);
        r.simple_roots = recover_simple_roots(t, r.lattice);
        r.simple_coroots = recover_simple_coroots(t, r.lattice, r.simple_roots);
        RootDatumData data{r.lattice.rank, r.simple_roots, r.simple_coroots, "recovered"};
        if (Verdict v = validate_root_datum(data); !v.ok) throw ReconstructionError("datum", v.axiom + ": " + v.detail);
        RootDatum d(data);
        try {
            r.weyl_order = weyl_group(d).order();
        } catch (const WeylClosureOverflow& e) {
            throw ReconstructionError("datum", e.what());
        }
        r.datum = d;
        r.placement = certify_table(t, d, r.lattice, params.placement_budget);
        r.certified = true;
    } catch (const ReconstructionError& e) {
        r.failed_stage = e.stage();
        r.reason = e.reason();
        r.witnesses = e.witnesses();
    }
    return r;
}

std::string ReconstructionReport::to_json(const OracleTable& t) const {
    using nlohmann::ordered_json;
    ordered_json j;
    j["verdict"] = certified ? "certified" : "failed";
    if (!certified) {
        j["stage"] = failed_stage;
        j["reason"] = reason;
        j["witnesses"] = witnesses;
    }
    j["parameters"] = {{"n_max", order.n_max}, {"theta_depth", order.theta_depth}};

    ordered_json pairs = ordered_json::array();
    unsigned replayed = order.n_max;
    std::size_t direct = 0;
    for (const auto& [pair, cert] : order.leq) {
        ordered_json c;
        c["mu"] = t.name(pair.first);
        c["lambda"] = t.name(pair.second);
        if (cert.via) {
            c["via"] = t.name(*cert.via);
        } else {
            ordered_json theta = ordered_json::array();
            for (LabelId f : cert.theta) theta.push_back(t.name(f));
            c["theta"] = theta;
            c["replayed_to"] = cert.replayed_to;
            replayed = std::min(replayed, cert.replayed_to);
            ++direct;
        }
        pairs.push_back(c);
    }
    j["order"] = {{"certified_pairs", order.leq.size()},
                  {"refuted_pairs", order.not_leq.size()},
                  {"unknown_pairs", order.leq.empty() ? 0 : order.unknown_pairs(t.window().size())},
                  {"min_replayed_to", direct ? replayed : 0},
                  {"pairs", pairs}};

    ordered_json sums = ordered_json::array();
    for (const auto& [pair, z] : monoid.sums) sums.push_back({t.name(pair.first), t.name(pair.second), t.name(z)});
    ordered_json undecided = ordered_json::array();
    for (const auto& [x, y] : monoid.undecided) undecided.push_back({t.name(x), t.name(y)});
    j["monoid"] = {{"zero", t.name(t.unit())}, {"sums", sums}, {"undecided", undecided}};

    ordered_json core = ordered_json::array(), gens = ordered_json::array();
    for (LabelId x : lattice.core) core.push_back(t.name(x));
    for (LabelId x : lattice.generators) gens.push_back(t.name(x));
    j["lattice"] = {{"rank", lattice.rank}, {"core", core}, {"generators", gens}};

    ordered_json embedding = ordered_json::object();
    const auto& weights = certified ? placement : lattice.embedding;
    for (const auto& [x, w] : weights) embedding[t.name(x)] = vec_to_json(w);
    j["embedding"] = embedding;

    ordered_json roots = ordered_json::array(), coroots = ordered_json::array();
    for (const auto& r : simple_roots) roots.push_back(vec_to_json(r));
    for (const auto& c : simple_coroots) coroots.push_back(vec_to_json(c));
    j["simple_roots"] = roots;
    j["simple_coroots"] = coroots;
    j["weyl_order"] = weyl_order;
    j["datum"] = datum ? datum_to_json(*datum) : ordered_json();
    return dump(j);
}

std::optional<RootDatum> datum_from_report(const std::string& json) {
    auto j = parse_json(json);
    if (!j.is_object() || !j.contains("verdict")) throw std::invalid_argument("not a reconstruction report");
    if (j["verdict"] != "certified" || j["datum"].is_null()) return std::nullopt;
    return datum_from_json(j["datum"]);
}

}  // namespace kzero

#include "kzero/oracle.hpp"

#include "kzero/char_engine.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>
#include <set>
#include <sstream>

namespace kzero {

bool ProductEntry::contains(LabelId z) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), z,
                               [](const auto& t, LabelId v) { return t.first < v; });
    return it != terms.end() && it->first == z;
}

Int ProductEntry::multiplicity(LabelId z) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), z,
                               [](const auto& t, LabelId v) { return t.first < v; });
    return it != terms.end() && it->first == z ? it->second : Int(0);
}

std::optional<LabelId> OracleTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<LabelId> OracleTable::dual(LabelId id) const { return dual_.at(id); }

const ProductEntry* OracleTable::product(LabelId x, LabelId y) const {
    auto it = products_.find(x <= y ? std::make_pair(x, y) : std::make_pair(y, x));
    return it == products_.end() ? nullptr : &it->second;
}

std::string OracleTable::serialize() const {
    std::ostringstream out;
    out << "labels:";
    for (LabelId id : window_ids_) out << ' ' << names_[id];
    out << '\n';
    if (!extra_ids_.empty()) {
        out << "extra:";
        for (LabelId id : extra_ids_) out << ' ' << names_[id];
        out << '\n';
    }
    out << "unit: " << names_[unit_] << '\n';
    for (LabelId id = 0; id < names_.size(); ++id)
        if (dual_[id] && *dual_[id] >= id) out << "dual: " << names_[id] << ' ' << names_[*dual_[id]] << '\n';
    for (const auto& [key, entry] : products_) {
        out << "prod " << names_[key.first] << ' ' << names_[key.second] << " :";
        if (!entry.known) {
            out << " ?\n";
            continue;
        }
        for (const auto& [z, m] : entry.terms) out << ' ' << names_[z] << '*' << m;
        out << '\n';
    }
    return out.str();
}

OracleTable OracleTable::Builder::build() const {
    OracleTable t;
    std::set<std::string> seen;
    for (const auto* group : {&window, &extra})
        for (const auto& n : *group)
            if (!seen.insert(n).second) throw std::invalid_argument("duplicate label '" + n + "'");
    t.names_.assign(seen.begin(), seen.end());
    for (LabelId i = 0; i < t.names_.size(); ++i) t.index_[t.names_[i]] = i;
    auto id_of = [&](const std::string& n) {
        auto it = t.index_.find(n);
        if (it == t.index_.end()) throw std::invalid_argument("unknown label '" + n + "'");
        return it->second;
    };
    t.window_.assign(t.names_.size(), false);
    for (const auto& n : window) t.window_[id_of(n)] = true;
    for (LabelId i = 0; i < t.names_.size(); ++i) (t.window_[i] ? t.window_ids_ : t.extra_ids_).push_back(i);
    if (unit.empty()) throw std::invalid_argument("missing unit");
    t.unit_ = id_of(unit);
    t.dual_.assign(t.names_.size(), std::nullopt);
    for (const auto& [a, b] : duals) {
        LabelId x = id_of(a), y = id_of(b);
        for (auto [p, q] : {std::make_pair(x, y), std::make_pair(y, x)}) {
            if (t.dual_[p] && *t.dual_[p] != q)
                throw std::invalid_argument("conflicting dual lines for '" + t.names_[p] + "'");
            t.dual_[p] = q;
        }
    }
    for (const auto& p : products) {
        LabelId x = id_of(p.x), y = id_of(p.y);
        auto key = x <= y ? std::make_pair(x, y) : std::make_pair(y, x);
        ProductEntry e;
        e.known = p.known;
        for (const auto& [n, m] : p.terms) {
            if (m <= 0) throw std::invalid_argument("nonpositive multiplicity for '" + n + "'");
            e.terms.emplace_back(id_of(n), m);
        }
        std::sort(e.terms.begin(), e.terms.end());
        for (std::size_t i = 1; i < e.terms.size(); ++i)
            if (e.terms[i].first == e.terms[i - 1].first)
                throw std::invalid_argument("repeated constituent '" + t.names_[e.terms[i].first] + "'");
        if (!t.products_.emplace(key, std::move(e)).second)
            throw std::invalid_argument("duplicate product line for '" + p.x + "' '" + p.y + "'");
    }
    return t;
}

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

struct Located {
    std::size_t line, column;
};

}  // namespace

OracleTable parse_oracle(const std::string& text) {
    OracleTable::Builder b;
    std::map<std::string, Located> declared;
    std::vector<std::pair<std::string, Located>> references;
    bool have_labels = false, have_unit = false;

    auto declare = [&](const Token& tok, std::size_t ln) {
        if (!valid_label(tok.text)) throw OracleParseError(ln, tok.column, "invalid label '" + tok.text + "'");
        if (!declared.emplace(tok.text, Located{ln, tok.column}).second)
            throw OracleParseError(ln, tok.column, "duplicate label '" + tok.text + "'");
    };
    auto reference = [&](const Token& tok, std::size_t ln) {
        if (!valid_label(tok.text)) throw OracleParseError(ln, tok.column, "invalid label '" + tok.text + "'");
        references.emplace_back(tok.text, Located{ln, tok.column});
    };

    std::istringstream in(text);
    std::string line;
    std::size_t ln = 0;
    std::set<std::pair<std::string, std::string>> product_keys;
    std::map<std::string, std::string> dual_of;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = tokenize(line);
        if (toks.empty() || toks[0].text[0] == '#') continue;
        const std::string& head = toks[0].text;
        if (head == "labels:" || head == "extra:") {
            if (head == "labels:") {
                if (have_labels) throw OracleParseError(ln, 1, "repeated 'labels:' line");
                have_labels = true;
            }
            for (std::size_t i = 1; i < toks.size(); ++i) {
                declare(toks[i], ln);
                (head == "labels:" ? b.window : b.extra).push_back(toks[i].text);
            }
        } else if (head == "unit:") {
            if (toks.size() != 2) throw OracleParseError(ln, toks[0].column, "expected 'unit: <label>'");
            if (have_unit) throw OracleParseError(ln, 1, "repeated 'unit:' line");
            have_unit = true;
            reference(toks[1], ln);
            b.unit = toks[1].text;
        } else if (head == "dual:") {
            if (toks.size() != 3) throw OracleParseError(ln, toks[0].column, "expected 'dual: <label> <label>'");
            reference(toks[1], ln);
            reference(toks[2], ln);
            for (auto [a, c] : {std::pair{&toks[1], &toks[2]}, std::pair{&toks[2], &toks[1]}}) {
                auto [it, fresh] = dual_of.emplace(a->text, c->text);
                if (!fresh && it->second != c->text)
                    throw OracleParseError(ln, a->column, "conflicting dual for '" + a->text + "'");
            }
            b.duals.emplace_back(toks[1].text, toks[2].text);
        } else if (head == "prod") {
            if (toks.size() < 5 || toks[3].text != ":") {
                std::size_t col = toks.size() > 3 ? toks[3].column : line.size() + 1;
                throw OracleParseError(ln, col, "expected 'prod <label> <label> : <terms>'");
            }
            reference(toks[1], ln);
            reference(toks[2], ln);
            auto key = std::minmax(toks[1].text, toks[2].text);
            if (!product_keys.insert(key).second)
                throw OracleParseError(ln, 1, "duplicate product line for '" + toks[1].text + "' '" + toks[2].text + "'");
            OracleTable::Builder::Product p{toks[1].text, toks[2].text, true, {}};
            if (toks.size() == 5 && toks[4].text == "?") {
                p.known = false;
            } else {
                std::set<std::string> in_line;
                for (std::size_t i = 4; i < toks.size(); ++i) {
                    const auto& t = toks[i];
                    auto star = t.text.find('*');
                    if (star == std::string::npos)
                        throw OracleParseError(ln, t.column, "expected '<label>*<multiplicity>' or '?'");
                    std::string lab = t.text.substr(0, star), mult = t.text.substr(star + 1);
                    reference({lab, t.column}, ln);
                    if (mult.empty() || !std::all_of(mult.begin(), mult.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                        throw OracleParseError(ln, t.column + star + 1, "multiplicity must be a positive integer");
                    Int m(mult);
                    if (m == 0) throw OracleParseError(ln, t.column + star + 1, "multiplicity must be a positive integer");
                    if (!in_line.insert(lab).second)
                        throw OracleParseError(ln, t.column, "repeated constituent '" + lab + "'");
                    p.terms.emplace_back(lab, m);
                }
            }
            b.products.push_back(std::move(p));
        } else {
            throw OracleParseError(ln, toks[0].column, "unknown directive '" + head + "'");
        }
    }
    if (!have_labels) throw OracleParseError(ln + 1, 1, "missing 'labels:' line");
    if (!have_unit) throw OracleParseError(ln + 1, 1, "missing 'unit:' line");
    for (const auto& [lab, at] : references)
        if (!declared.count(lab)) throw OracleParseError(at.line, at.column, "undeclared label '" + lab + "'");
    return b.build();
}

std::vector<Weight> window_weights(const RootDatum& d, unsigned long bound) {
    const std::size_t r = d.rank(), s = d.semisimple_rank();
    std::vector<Vec> rows = d.simple_coroots();
    for (const auto& c : d.central_functionals()) rows.push_back(c);
    IntMatrix m = IntMatrix::from_rows(rows, r);
    std::vector<Vec> columns;
    for (std::size_t j = 0; j < r; ++j) columns.push_back(m.column(j));

    std::vector<Weight> out;
    Vec t(r);
    const long b = static_cast<long>(bound);
    for (std::size_t i = 0; i < r; ++i) t[i] = i < s ? 0 : -b;
    for (;;) {
        if (auto x = solve_in_span(columns, t)) {
            Weight w;
            bool integral = true;
            for (const auto& q : *x) {
                if (denominator(q) != 1) integral = false;
                w.push_back(numerator(q));
            }
            if (integral) out.push_back(std::move(w));
        }
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (t[i] < b) {
                ++t[i];
                break;
            }
            t[i] = i < s ? 0 : -b;
        }
        if (i == r) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool beyond_horizon(const RootDatum& d, const Weight& w, unsigned long horizon) {
    if (horizon == 0) return false;
    for (const auto& p : d.simple_pairings(w))
        if (p > horizon) return true;
    for (const auto& c : d.central_functionals()) {
        Int v = dot(c, w);
        if (v > horizon || -v > horizon) return true;
    }
    return false;
}

std::string random_label(std::mt19937_64& rng) {
    static constexpr char kAlphabet[] = "abcdefghijkmnpqrstuvwxyz23456789";
    std::string s;
    for (int i = 0; i < 6; ++i) s.push_back(kAlphabet[rng() % 32]);
    return s;
}

}  // namespace

MaterializedOracle materialize_oracle(const RootDatum& d, unsigned long bound, const MaterializeOptions& options) {
    CharacterEngine engine(d);
    std::vector<Weight> window = window_weights(d, bound);

    struct Row {
        std::size_t i, j;
        std::optional<SemiringElement> value;
    };
    std::vector<Row> rows;
    std::set<Weight> window_set(window.begin(), window.end()), extra_set;
    for (std::size_t i = 0; i < window.size(); ++i)
        for (std::size_t j = i; j < window.size(); ++j) {
            SemiringElement t = engine.tensor(window[i], window[j]);
            bool inside = true;
            for (const auto& [w, m] : t.terms())
                if (beyond_horizon(d, w, options.horizon)) inside = false;
            if (inside) {
                for (const auto& [w, m] : t.terms())
                    if (!window_set.count(w)) extra_set.insert(w);
                rows.push_back({i, j, std::move(t)});
            } else {
                rows.push_back({i, j, std::nullopt});
            }
        }

    std::mt19937_64 rng(options.seed);
    std::map<Weight, std::string> label;
    std::set<std::string> used;
    auto assign = [&](const Weight& w) {
        std::string s;
        do s = random_label(rng);
        while (!used.insert(s).second);
        label[w] = s;
    };
    for (const auto& w : window) assign(w);
    for (const auto& w : extra_set) assign(w);

    OracleTable::Builder b;
    MaterializedOracle out;
    for (const auto& w : window) b.window.push_back(label[w]);
    for (const auto& w : extra_set) b.extra.push_back(label[w]);
    b.unit = label.at(Weight(d.rank()));
    for (const auto& [w, s] : label) {
        out.provenance[s] = w;
        Weight dw = engine.dual_label(w);
        if (w <= dw) b.duals.emplace_back(s, label.at(dw));
    }
    for (auto& row : rows) {
        OracleTable::Builder::Product p{label[window[row.i]], label[window[row.j]], row.value.has_value(), {}};
        if (row.value)
            for (const auto& [w, m] : row.value->terms()) p.terms.emplace_back(label.at(w), m);
        b.products.push_back(std::move(p));
    }
    out.table = b.build();
    return out;
}

namespace {

using Combination = std::map<LabelId, Int>;

// (sum m_k [k]) * [z] when every needed product is known and every k is a window label.
std::optional<Combination> times(const OracleTable& t, const ProductEntry& a, LabelId z) {
    Combination out;
    for (const auto& [k, m] : a.terms) {
        if (!t.in_window(k)) return std::nullopt;
        const ProductEntry* e = t.product(k, z);
        if (!e || !e->known) return std::nullopt;
        for (const auto& [w, mw] : e->terms) out[w] += m * mw;
    }
    return out;
}

OracleVerdict fail(std::string axiom, std::vector<std::string> witnesses, std::string detail) {
    return {false, std::move(axiom), std::move(witnesses), std::move(detail)};
}

}  // namespace

OracleVerdict validate_oracle(const OracleTable& t) {
    const auto& name = [&](LabelId id) { return t.name(id); };
    const LabelId u = t.unit();
    if (!t.in_window(u)) return fail("unit", {name(u)}, "the unit is not a window label");

    for (LabelId x = 0; x < t.size(); ++x) {
        auto dx = t.dual(x);
        if (!dx) return fail("dual involution", {name(x)}, "label has no dual");
        if (t.dual(*dx) != x) return fail("dual involution", {name(x), name(*dx)}, "dual is not an involution");
        if (t.in_window(x) != t.in_window(*dx))
            return fail("dual involution", {name(x), name(*dx)}, "window is not closed under duals");
    }
    if (*t.dual(u) != u) return fail("dual involution", {name(u)}, "the unit is not self-dual");

    for (const auto& [key, e] : t.products())
        if (!t.in_window(key.first) || !t.in_window(key.second))
            return fail("closed-enough", {name(key.first), name(key.second)}, "product of a non-window label");
    const auto& win = t.window();
    for (std::size_t i = 0; i < win.size(); ++i)
        for (std::size_t j = i; j < win.size(); ++j)
            if (!t.product(win[i], win[j]))
                return fail("closed-enough", {name(win[i]), name(win[j])}, "window pair without a product line");

    for (LabelId x : win) {
        const ProductEntry* e = t.product(u, x);
        if (!e->known || e->terms.size() != 1 || e->terms[0].first != x || e->terms[0].second != 1)
            return fail("unit law", {name(x)}, "unit * x must be exactly x");
    }
    for (LabelId x : win) {
        if (x == u) continue;
        const ProductEntry* e = t.product(x, x);
        if (e->known && e->terms.size() == 1 && e->terms[0].first == x && e->terms[0].second == 1)
            return fail("idempotent", {name(x)}, "x * x = x forces x to be the unit");
    }
    for (const auto& [key, e] : t.products()) {
        if (!e.known) continue;
        Int expect = *t.dual(key.first) == key.second ? 1 : 0;
        Int got = e.multiplicity(u);
        if (got != expect)
            return fail("dual pairing", {name(key.first), name(key.second)},
                        "unit multiplicity " + got.str() + ", expected " + expect.str());
    }
    for (const auto& [key, e] : t.products()) {
        if (!e.known) continue;
        const ProductEntry* f = t.product(*t.dual(key.first), *t.dual(key.second));
        if (!f->known) continue;
        ProductEntry mapped{true, {}};
        for (const auto& [z, m] : e.terms) mapped.terms.emplace_back(*t.dual(z), m);
        std::sort(mapped.terms.begin(), mapped.terms.end());
        if (!(mapped == *f))
            return fail("dual compatibility", {name(key.first), name(key.second)},
                        "product of duals is not the dual of the product");
    }
    for (std::size_t i = 0; i < win.size(); ++i)
        for (std::size_t j = i; j < win.size(); ++j)
            for (std::size_t k = j; k < win.size(); ++k) {
                LabelId x = win[i], y = win[j], z = win[k];
                std::optional<Combination> first;
                for (auto [a, b, c] : {std::array{x, y, z}, std::array{y, z, x}, std::array{x, z, y}}) {
                    const ProductEntry* e = t.product(a, b);
                    if (!e->known) continue;
                    auto v = times(t, *e, c);
                    if (!v) continue;
                    if (!first) {
                        first = std::move(v);
                    } else if (*first != *v) {
                        return fail("associativity", {name(x), name(y), name(z)}, "bracketings disagree");
                    }
                }
            }
    return {};
}

}  // namespace kzero

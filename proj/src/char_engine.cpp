#include "kzero/char_engine.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

namespace kzero {

namespace {

std::string weight_text(const Weight& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    return os.str();
}

}  // namespace

void SemiringElement::add(const Weight& lambda, const Int& mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms_.try_emplace(lambda, mult);
    if (!inserted) {
        it->second += mult;
        if (it->second == 0) terms_.erase(it);
    }
}

void SemiringElement::add(const SemiringElement& other) {
    for (const auto& [w, m] : other.terms_) add(w, m);
}

Int SemiringElement::multiplicity(const Weight& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Int(0) : it->second;
}

bool SemiringElement::all_positive() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

std::string SemiringElement::to_lines() const {
    std::ostringstream os;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
        os << weight_text(it->first) << " : " << it->second << '\n';
    return os.str();
}

std::string FundamentalPolynomial::to_string(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest total degree first
    std::vector<std::pair<std::vector<unsigned>, Int>> ordered(terms.begin(), terms.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        unsigned da = 0, db = 0;
        for (unsigned e : a.first) da += e;
        for (unsigned e : b.first) db += e;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    for (const auto& [exps, coeff] : ordered) {
        Int c = coeff;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (c < 0) c = -c;
        bool constant = std::all_of(exps.begin(), exps.end(), [](unsigned e) { return e == 0; });
        if (c != 1 || constant) os << c;
        bool need_dot = c != 1 && !constant;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (need_dot) os << "*";
            os << (i < names.size() ? names[i] : "x" + std::to_string(i));
            if (exps[i] > 1) os << "^" << exps[i];
            need_dot = true;
        }
        first = false;
    }
    return os.str();
}

CharacterEngine::CharacterEngine(RootDatum datum) : datum_(std::move(datum)) {}

void CharacterEngine::require_dominant(const Weight& lambda, const char* what) const {
    if (lambda.size() != datum_.rank() || !is_dominant(datum_, lambda))
        throw NotDominant(std::string(what) + ": weight " + to_string(lambda) + " is not dominant");
}

std::shared_ptr<const FormalCharacter> CharacterEngine::compute_dominant_character(const Weight& lambda) const {
    const RootDatum& d = datum_;
    // dominant weights below lambda: descend by positive roots staying in the chamber
    std::map<Weight, Int> depth;  // height of lambda - mu
    std::deque<Weight> queue{lambda};
    depth[lambda] = 0;
    std::vector<Int> root_height;
    for (const auto& a : d.positive_roots()) {
        auto c = d.root_coordinates(a);
        Int h = 0;
        for (const auto& q : *c) h += numerator(q);
        root_height.push_back(h);
    }
    while (!queue.empty()) {
        Weight mu = std::move(queue.front());
        queue.pop_front();
        for (std::size_t k = 0; k < d.positive_roots().size(); ++k) {
            Weight nu = sub(mu, d.positive_roots()[k]);
            if (!is_dominant(d, nu) || depth.count(nu)) continue;
            depth[nu] = depth[mu] + root_height[k];
            queue.push_back(std::move(nu));
        }
    }
    std::vector<Weight> order;
    for (const auto& [w, h] : depth) order.push_back(w);
    std::stable_sort(order.begin(), order.end(),
                     [&](const Weight& a, const Weight& b) { return depth[a] < depth[b]; });

    auto result = std::make_shared<FormalCharacter>();
    FormalCharacter& mult = *result;
    const Weight& two_rho = d.two_rho();
    Weight top = add(scale(Int(2), lambda), two_rho);
    const Int top_norm = d.form(top, top);
    for (const Weight& mu : order) {
        if (mu == lambda) {
            mult[mu] = 1;
            continue;
        }
        Int acc = 0;
        for (const auto& alpha : d.positive_roots()) {
            Weight shifted = add(mu, alpha);
            for (;;) {
                Weight dom = dominant_representative(d, shifted);
                auto it = mult.find(dom);
                if (it == mult.end()) {
                    if (!depth.count(dom)) break;  // left the weight polytope
                    // dominant weights are processed by increasing depth, so dom is known
                    throw std::logic_error("Freudenthal recursion visited an unprocessed weight");
                }
                acc += it->second * d.form(shifted, alpha);
                shifted = add(shifted, alpha);
            }
        }
        Weight here = add(scale(Int(2), mu), two_rho);
        Int denom = top_norm - d.form(here, here);
        Int numer = 8 * acc;
        if (denom <= 0 || numer % denom != 0)
            throw std::logic_error("Freudenthal recursion produced a non-integral multiplicity");
        Int m = numer / denom;
        if (m != 0) mult[mu] = m;
    }
    return result;
}

std::shared_ptr<const FormalCharacter> CharacterEngine::dominant_character(const Weight& lambda) const {
    require_dominant(lambda, "dominant_character");
    {
        std::shared_lock lock(mutex_);
        if (auto it = dominant_chars_.find(lambda); it != dominant_chars_.end()) return it->second;
    }
    auto computed = compute_dominant_character(lambda);
    std::unique_lock lock(mutex_);
    return dominant_chars_.try_emplace(lambda, std::move(computed)).first->second;
}

std::shared_ptr<const FormalCharacter> CharacterEngine::character(const Weight& lambda) const {
    require_dominant(lambda, "irreducible_character");
    {
        std::shared_lock lock(mutex_);
        if (auto it = chars_.find(lambda); it != chars_.end()) return it->second;
    }
    auto dom = dominant_character(lambda);
    auto full = std::make_shared<FormalCharacter>();
    for (const auto& [mu, m] : *dom)
        for (const auto& w : orbit(datum_, mu)) (*full)[w] = m;
    std::unique_lock lock(mutex_);
    return chars_.try_emplace(lambda, std::move(full)).first->second;
}

Int CharacterEngine::dimension(const Weight& lambda) const {
    require_dominant(lambda, "dimension");
    const Weight& two_rho = datum_.two_rho();
    Weight shifted = add(scale(Int(2), lambda), two_rho);
    Rational dim = 1;
    for (const auto& c : datum_.positive_coroots()) dim *= Rational(dot(c, shifted), dot(c, two_rho));
    if (denominator(dim) != 1) throw std::logic_error("Weyl dimension formula gave a fraction");
    return numerator(dim);
}

SemiringElement CharacterEngine::tensor(const Weight& lambda, const Weight& mu) const {
    require_dominant(lambda, "tensor_decompose");
    require_dominant(mu, "tensor_decompose");
    auto key = lambda < mu ? std::make_pair(lambda, mu) : std::make_pair(mu, lambda);
    {
        std::shared_lock lock(mutex_);
        if (auto it = tensors_.find(key); it != tensors_.end()) return it->second;
    }
    // iterate over the weights of the smaller factor
    const Weight* big = &lambda;
    const Weight* small = &mu;
    if (dimension(lambda) < dimension(mu)) std::swap(big, small);
    auto ch = character(*small);
    const Weight& two_rho = datum_.two_rho();
    SemiringElement out;
    for (const auto& [nu, m] : *ch) {
        Weight y = add(scale(Int(2), add(*big, nu)), two_rho);
        ChamberReduction red = reduce_to_chamber(datum_, std::move(y));
        if (red.singular) continue;
        Weight top = sub(red.dominant, two_rho);
        for (auto& c : top) c /= 2;
        out.add(top, red.odd ? Int(-m) : m);
    }
    if (!out.all_positive()) throw std::logic_error("Brauer-Klimyk cancellation left a negative term");
    std::unique_lock lock(mutex_);
    return tensors_.try_emplace(key, std::move(out)).first->second;
}

SemiringElement CharacterEngine::multiply(const SemiringElement& a, const SemiringElement& b) const {
    SemiringElement out;
    for (const auto& [x, mx] : a.terms())
        for (const auto& [y, my] : b.terms()) {
            SemiringElement t = tensor(x, y);
            for (const auto& [z, mz] : t.terms()) out.add(z, mx * my * mz);
        }
    return out;
}

std::vector<Weight> CharacterEngine::prv_components(const Weight& lambda, const Weight& mu) const {
    require_dominant(lambda, "prv_components");
    require_dominant(mu, "prv_components");
    std::set<Weight> out;
    for (const auto& w : orbit(datum_, mu)) out.insert(dominant_representative(datum_, add(lambda, w)));
    return {out.begin(), out.end()};
}

Weight CharacterEngine::dual_label(const Weight& lambda) const {
    require_dominant(lambda, "dual_label");
    return dominant_representative(datum_, negate(lambda));
}

std::vector<Weight> CharacterEngine::monoid_generators() const {
    const std::size_t n = datum_.rank();
    const std::size_t r = datum_.semisimple_rank();
    if (r != n)
        throw std::invalid_argument("monoid_generators: the roots do not span the character lattice");
    // pairing map X* -> Z^r is injective; its image has index N = |det C|
    IntMatrix c = IntMatrix::from_rows(datum_.simple_coroots(), n);
    Int index = abs(determinant(c));
    std::vector<Vec> columns;
    for (std::size_t j = 0; j < n; ++j) columns.push_back(c.column(j));
    const long bound = static_cast<long>(index);
    std::vector<Vec> coords;   // fundamental coordinates of lattice points in the box
    std::vector<Weight> points;
    Vec cur(r, Int(0));
    for (;;) {
        auto x = solve_in_span(columns, cur);
        bool integral = x && std::all_of(x->begin(), x->end(), [](const Rational& q) { return denominator(q) == 1; });
        if (integral && !is_zero(cur)) {
            Weight w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = numerator((*x)[i]);
            coords.push_back(cur);
            points.push_back(std::move(w));
        }
        std::size_t pos = 0;
        while (pos < r && cur[pos] == bound) cur[pos++] = 0;
        if (pos == r) break;
        cur[pos] += 1;
    }
    std::set<Vec> present(coords.begin(), coords.end());
    std::vector<Weight> gens;
    for (std::size_t p = 0; p < coords.size(); ++p) {
        bool reducible = false;
        for (const auto& a : coords) {
            if (a == coords[p]) continue;
            bool below = true;
            for (std::size_t i = 0; i < r; ++i)
                if (a[i] > coords[p][i]) below = false;
            if (below && present.count(sub(coords[p], a))) {
                reducible = true;
                break;
            }
        }
        if (!reducible) gens.push_back(points[p]);
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

namespace {

// Exponents e with sum e_g * gen_g == target, depth-first with larger counts of earlier generators first.
bool decompose(const RootDatum& d, const std::vector<Weight>& gens, std::size_t idx, const Weight& target,
               std::vector<unsigned>& exps) {
    if (is_zero(target)) return true;
    if (idx == gens.size()) return false;
    // max copies of gens[idx] keeping the remainder dominant
    Weight rest = target;
    std::vector<Weight> stack{rest};
    while (true) {
        Weight next = sub(stack.back(), gens[idx]);
        if (!is_dominant(d, next)) break;
        stack.push_back(std::move(next));
    }
    for (std::size_t k = stack.size(); k-- > 0;) {
        exps[idx] = static_cast<unsigned>(k);
        if (decompose(d, gens, idx + 1, stack[k], exps)) return true;
    }
    exps[idx] = 0;
    return false;
}

}  // namespace

FundamentalPolynomial CharacterEngine::express_in_fundamentals(const Weight& lambda) const {
    require_dominant(lambda, "express_in_fundamentals");
    {
        std::shared_lock lock(mutex_);
        if (auto it = expressions_.find(lambda); it != expressions_.end()) return it->second;
    }
    const std::vector<Weight> gens = monoid_generators();
    FundamentalPolynomial out;
    out.generators = gens;
    std::vector<unsigned> exps(gens.size(), 0);
    if (!decompose(datum_, gens, 0, lambda, exps))
        throw std::invalid_argument("express_in_fundamentals: " + to_string(lambda) +
                                    " is not in the monoid generated by the chosen generators");
    // leading monomial and its expansion
    SemiringElement expansion = SemiringElement::irreducible(Weight(datum_.rank()));
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (unsigned k = 0; k < exps[g]; ++k)
            expansion = multiply(expansion, SemiringElement::irreducible(gens[g]));
    if (expansion.multiplicity(lambda) != 1)
        throw std::logic_error("express_in_fundamentals: Cartan component missing from the leading monomial");
    out.terms[exps] = 1;
    // peel off lower terms in decreasing lexicographic order
    for (auto it = expansion.terms().rbegin(); it != expansion.terms().rend(); ++it) {
        if (it->first == lambda) continue;
        FundamentalPolynomial lower = express_in_fundamentals(it->first);
        for (const auto& [e, c] : lower.terms) {
            Int& slot = out.terms[e];
            slot -= it->second * c;
            if (slot == 0) out.terms.erase(e);
        }
    }
    std::unique_lock lock(mutex_);
    return expressions_.try_emplace(lambda, std::move(out)).first->second;
}

SemiringElement CharacterEngine::evaluate(const FundamentalPolynomial& p) const {
    SemiringElement total;
    for (const auto& [exps, coeff] : p.terms) {
        SemiringElement term = SemiringElement::irreducible(Weight(datum_.rank()));
        for (std::size_t g = 0; g < exps.size(); ++g)
            for (unsigned k = 0; k < exps[g]; ++k)
                term = multiply(term, SemiringElement::irreducible(p.generators[g]));
        for (const auto& [w, m] : term.terms()) total.add(w, m * coeff);
    }
    return total;
}

FormalCharacter irreducible_character(const RootDatum& d, const Weight& lambda) {
    return *CharacterEngine(d).character(lambda);
}
Int dimension(const RootDatum& d, const Weight& lambda) { return CharacterEngine(d).dimension(lambda); }
SemiringElement tensor_decompose(const RootDatum& d, const Weight& lambda, const Weight& mu) {
    return CharacterEngine(d).tensor(lambda, mu);
}
std::vector<Weight> prv_components(const RootDatum& d, const Weight& lambda, const Weight& mu) {
    return CharacterEngine(d).prv_components(lambda, mu);
}
Weight dual_label(const RootDatum& d, const Weight& lambda) { return CharacterEngine(d).dual_label(lambda); }
FundamentalPolynomial express_in_fundamentals(const RootDatum& d, const Weight& lambda) {
    return CharacterEngine(d).express_in_fundamentals(lambda);
}

}  // namespace kzero

#include "kzero/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace kzero {

namespace {

std::string subset_name(const std::vector<std::size_t>& idx) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
    os << '}';
    return os.str();
}

IntMatrix cartan_of(const RootDatumData& d) {
    const std::size_t r = d.simple_roots.size();
    IntMatrix a(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a(i, j) = dot(d.simple_coroots[i], d.simple_roots[j]);
    return a;
}

}  // namespace

Verdict validate_root_datum(const RootDatumData& d) {
    if (d.rank == 0) return Verdict::reject("lattice rank", "rank must be positive");
    if (d.simple_roots.size() != d.simple_coroots.size()) {
        std::ostringstream os;
        os << d.simple_roots.size() << " simple roots but " << d.simple_coroots.size() << " simple coroots";
        return Verdict::reject("root/coroot count", os.str());
    }
    for (std::size_t i = 0; i < d.simple_roots.size(); ++i) {
        if (d.simple_roots[i].size() != d.rank || d.simple_coroots[i].size() != d.rank) {
            std::ostringstream os;
            os << "simple root/coroot " << i << " does not have " << d.rank << " coordinates";
            return Verdict::reject("lattice rank", os.str());
        }
    }
    const std::size_t r = d.simple_roots.size();
    const IntMatrix a = cartan_of(d);
    for (std::size_t i = 0; i < r; ++i) {
        if (a(i, i) != 2) {
            std::ostringstream os;
            os << "<coroot_" << i << ", root_" << i << "> = " << a(i, i) << ", expected 2";
            return Verdict::reject("Cartan diagonal", os.str());
        }
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            if (a(i, j) > 0 || ((a(i, j) == 0) != (a(j, i) == 0))) {
                std::ostringstream os;
                os << "entries (" << i << "," << j << ")=" << a(i, j) << " and (" << j << "," << i
                   << ")=" << a(j, i) << " violate the generalized Cartan sign pattern";
                return Verdict::reject("Cartan off-diagonal", os.str());
            }
        }
    // finite type <=> every principal minor is positive
    for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        IntMatrix sub(idx.size(), idx.size());
        for (std::size_t p = 0; p < idx.size(); ++p)
            for (std::size_t q = 0; q < idx.size(); ++q) sub(p, q) = a(idx[p], idx[q]);
        Int det = determinant(sub);
        if (det <= 0) {
            std::ostringstream os;
            os << "Cartan submatrix on " << subset_name(idx) << " has determinant " << det
               << " (not of finite type)";
            return Verdict::reject("finite type", os.str());
        }
    }
    if (r > 0 && rank(IntMatrix::from_rows(d.simple_roots, d.rank)) != r)
        return Verdict::reject("root independence", "simple roots are linearly dependent");
    if (r > 0 && rank(IntMatrix::from_rows(d.simple_coroots, d.rank)) != r)
        return Verdict::reject("coroot independence", "simple coroots are linearly dependent");
    return Verdict::accept();
}

namespace {

template <class Reflect>
std::set<Vec> orbit_under(std::size_t gens, const Vec& start, Reflect reflect) {
    std::set<Vec> seen{start};
    std::deque<Vec> queue{start};
    while (!queue.empty()) {
        Vec x = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i < gens; ++i) {
            Vec y = reflect(i, x);
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    return seen;
}

bool all_nonnegative(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q >= 0; });
}

}  // namespace

RootDatum::RootDatum(RootDatumData data) : data_(std::move(data)) {
    if (Verdict v = validate_root_datum(data_); !v.ok) throw InvalidRootDatum(std::move(v));
    auto dv = std::make_shared<Derived>();
    const std::size_t n = data_.rank;
    const std::size_t r = semisimple_rank();
    dv->cartan = cartan_of(data_);

    // projector onto root coordinates: x = (G^-1 R^T v), G = R^T R
    IntMatrix rm = IntMatrix::from_columns(data_.simple_roots, n);
    IntMatrix g = rm.transposed() * rm;
    dv->denominator = r == 0 ? Int(1) : determinant(g);
    dv->projector = IntMatrix(r, n);
    for (std::size_t c = 0; c < n; ++c) {
        Vec e(n);
        e[c] = 1;
        if (r == 0) break;
        // solve G y = R^T e over Q, scale by det(G)
        Vec rhs = rm.transposed().apply(e);
        std::vector<Vec> gcols;
        for (std::size_t j = 0; j < r; ++j) gcols.push_back(g.column(j));
        auto y = solve_in_span(gcols, rhs);
        for (std::size_t i = 0; i < r; ++i) {
            Rational scaled = (*y)[i] * Rational(dv->denominator);
            dv->projector(i, c) = numerator(scaled);
        }
    }
    derived_ = dv;

    std::set<Weight> roots;
    for (const auto& a : data_.simple_roots) {
        auto o = orbit_under(r, a, [this](std::size_t i, const Vec& x) { return reflect(i, x); });
        roots.insert(o.begin(), o.end());
    }
    std::set<Coweight> coroots;
    for (const auto& a : data_.simple_coroots) {
        auto o = orbit_under(r, a, [this](std::size_t i, const Vec& y) { return reflect_coweight(i, y); });
        coroots.insert(o.begin(), o.end());
    }
    dv->two_rho = Weight(n);
    for (const auto& a : roots) {
        auto c = root_coordinates(a);
        if (all_nonnegative(*c)) {
            dv->positive_roots.push_back(a);
            dv->two_rho = add(dv->two_rho, a);
        }
    }
    for (const auto& c : coroots) {
        auto coeff = solve_in_span(data_.simple_coroots, c);
        if (all_nonnegative(*coeff)) dv->positive_coroots.push_back(c);
    }
    dv->central = r == 0 ? integer_kernel(IntMatrix(0, n))
                         : integer_kernel(IntMatrix::from_rows(data_.simple_roots, n));
}

Vec RootDatum::simple_pairings(const Weight& x) const {
    Vec out(semisimple_rank());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = dot(data_.simple_coroots[i], x);
    return out;
}

std::optional<RatVec> RootDatum::root_coordinates(const Weight& x) const {
    const std::size_t r = semisimple_rank();
    Vec y = derived_->projector.apply(x);
    // verify membership in the span: R y == den * x
    Vec back(rank());
    for (std::size_t i = 0; i < r; ++i) back = add(back, scale(y[i], data_.simple_roots[i]));
    if (back != scale(derived_->denominator, x)) return std::nullopt;
    RatVec out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = Rational(y[i], derived_->denominator);
    return out;
}

Weight RootDatum::reflect(std::size_t i, const Weight& x) const {
    Int p = dot(data_.simple_coroots[i], x);
    if (p == 0) return x;
    return sub(x, scale(p, data_.simple_roots[i]));
}

Coweight RootDatum::reflect_coweight(std::size_t i, const Coweight& y) const {
    Int p = dot(y, data_.simple_roots[i]);
    if (p == 0) return y;
    return sub(y, scale(p, data_.simple_coroots[i]));
}

Int RootDatum::form(const Weight& x, const Weight& y) const {
    Int s = 0;
    for (const auto& c : derived_->positive_coroots) s += dot(c, x) * dot(c, y);
    return s;
}

IntMatrix RootDatum::reflection_matrix(std::size_t i) const {
    const std::size_t n = rank();
    IntMatrix s = IntMatrix::identity(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s(a, b) -= data_.simple_roots[i][a] * data_.simple_coroots[i][b];
    return s;
}

RootDatum RootDatum::dual() const {
    RootDatumData d{data_.rank, data_.simple_coroots, data_.simple_roots,
                    data_.name.empty() ? std::string{} : data_.name + "^dual"};
    return RootDatum(std::move(d));
}

bool is_dominant(const RootDatum& d, const Weight& lambda) {
    for (const auto& c : d.simple_coroots())
        if (dot(c, lambda) < 0) return false;
    return true;
}

bool dominance_leq(const RootDatum& d, const Weight& mu, const Weight& lambda) {
    auto coeff = d.root_coordinates(sub(lambda, mu));
    if (!coeff) return false;
    return std::all_of(coeff->begin(), coeff->end(),
                       [](const Rational& q) { return q >= 0 && denominator(q) == 1; });
}

bool rational_dominance_leq(const RootDatum& d, const Weight& mu, const Weight& lambda) {
    auto coeff = d.root_coordinates(sub(lambda, mu));
    return coeff && all_nonnegative(*coeff);
}

WeylGroup weyl_group(const RootDatum& d, std::size_t bound) {
    WeylGroup w;
    for (std::size_t i = 0; i < d.semisimple_rank(); ++i) w.generators.push_back(d.reflection_matrix(i));
    std::set<IntMatrix> seen{IntMatrix::identity(d.rank())};
    std::deque<IntMatrix> queue{IntMatrix::identity(d.rank())};
    while (!queue.empty()) {
        IntMatrix g = std::move(queue.front());
        queue.pop_front();
        for (const auto& s : w.generators) {
            IntMatrix h = s * g;
            if (seen.insert(h).second) {
                if (seen.size() > bound) {
                    std::ostringstream os;
                    os << "Weyl group closure exceeded " << bound << " elements";
                    throw WeylClosureOverflow(os.str());
                }
                queue.push_back(std::move(h));
            }
        }
    }
    w.elements.assign(seen.begin(), seen.end());
    return w;
}

std::vector<Weight> orbit(const RootDatum& d, const Weight& lambda) {
    auto o = orbit_under(d.semisimple_rank(), lambda,
                         [&d](std::size_t i, const Vec& x) { return d.reflect(i, x); });
    return {o.begin(), o.end()};
}

ChamberReduction reduce_to_chamber(const RootDatum& d, Weight x) {
    ChamberReduction out;
    const std::size_t r = d.semisimple_rank();
    for (;;) {
        bool moved = false;
        for (std::size_t i = 0; i < r; ++i) {
            Int p = dot(d.simple_coroots()[i], x);
            if (p < 0) {
                x = sub(x, scale(p, d.simple_roots()[i]));
                out.odd = !out.odd;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    for (std::size_t i = 0; i < r; ++i)
        if (dot(d.simple_coroots()[i], x) == 0) out.singular = true;
    out.dominant = std::move(x);
    return out;
}

Weight dominant_representative(const RootDatum& d, const Weight& lambda) {
    return reduce_to_chamber(d, lambda).dominant;
}

namespace {

// Greedy size reduction of p against the kernel vectors.
void size_reduce(Vec& p, const std::vector<Vec>& kernel) {
    for (int round = 0; round < 64; ++round) {
        bool changed = false;
        for (const auto& k : kernel) {
            Int kk = dot(k, k);
            if (kk == 0) continue;
            Int pk = dot(p, k);
            // nearest integer to pk / kk
            Int q = (2 * pk + kk) / (2 * kk);
            if (2 * pk + kk < 0 && (2 * pk + kk) % (2 * kk) != 0) q -= 1;
            if (q != 0) {
                p = sub(p, scale(q, k));
                changed = true;
            }
        }
        if (!changed) return;
    }
}

IntMatrix unflatten(const Vec& v, std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) = v[a * n + b];
    return m;
}

std::optional<IntMatrix> unimodular_in_family(const Vec& particular, const std::vector<Vec>& kernel,
                                              std::size_t n) {
    const std::size_t k = kernel.size();
    constexpr std::size_t kBudget = 400'000;
    std::size_t visited = 0;
    for (int radius = 0; radius <= 3; ++radius) {
        std::vector<int> t(k, -radius);
        for (;;) {
            bool on_shell = radius == 0;
            for (int x : t)
                if (x == radius || x == -radius) on_shell = true;
            if (on_shell) {
                Vec v = particular;
                for (std::size_t i = 0; i < k; ++i)
                    if (t[i] != 0) v = add(v, scale(Int(t[i]), kernel[i]));
                IntMatrix m = unflatten(v, n);
                Int det = determinant(m);
                if (det == 1 || det == -1) return m;
                if (++visited > kBudget) return std::nullopt;
            }
            std::size_t pos = 0;
            while (pos < k && t[pos] == radius) t[pos++] = -radius;
            if (pos == k) break;
            ++t[pos];
        }
        if (k == 0) break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<RootDatumIsomorphism> root_data_isomorphic(const RootDatum& d1, const RootDatum& d2) {
    const std::size_t n = d1.rank();
    const std::size_t r = d1.semisimple_rank();
    if (d2.rank() != n || d2.semisimple_rank() != r) return std::nullopt;
    std::vector<std::size_t> sigma(r);
    std::iota(sigma.begin(), sigma.end(), 0);
    const IntMatrix& a1 = d1.cartan_matrix();
    const IntMatrix& a2 = d2.cartan_matrix();
    do {
        bool compatible = true;
        for (std::size_t i = 0; i < r && compatible; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (a1(sigma[i], sigma[j]) != a2(i, j)) {
                    compatible = false;
                    break;
                }
        if (!compatible) continue;
        // unknown M (n x n), flattened row-major: M beta_j = alpha_sigma(j), M^T corootalpha_sigma(j) = corootbeta_j
        IntMatrix sys(2 * n * r, n * n);
        Vec rhs(2 * n * r);
        std::size_t row = 0;
        for (std::size_t j = 0; j < r; ++j) {
            const Weight& beta = d2.simple_roots()[j];
            const Weight& alpha = d1.simple_roots()[sigma[j]];
            for (std::size_t a = 0; a < n; ++a, ++row) {
                for (std::size_t b = 0; b < n; ++b) sys(row, a * n + b) = beta[b];
                rhs[row] = alpha[a];
            }
        }
        for (std::size_t j = 0; j < r; ++j) {
            const Coweight& cbeta = d2.simple_coroots()[j];
            const Coweight& calpha = d1.simple_coroots()[sigma[j]];
            for (std::size_t b = 0; b < n; ++b, ++row) {
                for (std::size_t a = 0; a < n; ++a) sys(row, a * n + b) = calpha[a];
                rhs[row] = cbeta[b];
            }
        }
        std::optional<IntMatrix> m;
        if (r == 0) {
            m = IntMatrix::identity(n);
        } else {
            auto sol = solve_integer(sys, rhs);
            if (!sol) continue;
            size_reduce(sol->particular, sol->kernel);
            m = unimodular_in_family(sol->particular, sol->kernel, n);
        }
        if (!m) continue;
        auto inv = unimodular_inverse(*m);
        if (!inv) continue;
        return RootDatumIsomorphism{*m, inv->transposed(), sigma};
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

namespace fixtures {

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// Simply connected form: X* in the fundamental-weight basis, roots are Cartan columns.
RootDatum simply_connected(const std::vector<std::vector<long>>& cartan, std::string name) {
    const std::size_t r = cartan.size();
    RootDatumData d;
    d.rank = r;
    d.name = std::move(name);
    for (std::size_t j = 0; j < r; ++j) {
        Vec root(r), coroot(r);
        for (std::size_t i = 0; i < r; ++i) root[i] = cartan[i][j];
        coroot[j] = 1;
        d.simple_roots.push_back(root);
        d.simple_coroots.push_back(coroot);
    }
    return RootDatum(std::move(d));
}

// Adjoint form: X* is the root lattice, coroots are Cartan rows.
RootDatum adjoint(const std::vector<std::vector<long>>& cartan, std::string name) {
    const std::size_t r = cartan.size();
    RootDatumData d;
    d.rank = r;
    d.name = std::move(name);
    for (std::size_t i = 0; i < r; ++i) {
        Vec root(r), coroot(r);
        root[i] = 1;
        for (std::size_t j = 0; j < r; ++j) coroot[j] = cartan[i][j];
        d.simple_roots.push_back(root);
        d.simple_coroots.push_back(coroot);
    }
    return RootDatum(std::move(d));
}

const std::vector<std::vector<long>> kA2 = {{2, -1}, {-1, 2}};
const std::vector<std::vector<long>> kC2 = {{2, -2}, {-1, 2}};
const std::vector<std::vector<long>> kG2 = {{2, -3}, {-1, 2}};

}  // namespace

RootDatum sl2() { return RootDatum({1, {v({2})}, {v({1})}, "SL2"}); }
RootDatum pgl2() { return RootDatum({1, {v({1})}, {v({2})}, "PGL2"}); }
RootDatum gl2() { return RootDatum({2, {v({1, -1})}, {v({1, -1})}, "GL2"}); }
RootDatum sl3() { return simply_connected(kA2, "SL3"); }
RootDatum pgl3() { return adjoint(kA2, "PGL3"); }
RootDatum sp4() { return simply_connected(kC2, "Sp4"); }
RootDatum so5() {
    RootDatum d = sp4().dual();
    RootDatumData data = d.data();
    data.name = "SO5";
    return RootDatum(std::move(data));
}
RootDatum g2() { return simply_connected(kG2, "G2"); }
RootDatum sl2_x_pgl2() {
    return RootDatum({2, {v({2, 0}), v({0, 1})}, {v({1, 0}), v({0, 2})}, "SL2xPGL2"});
}
RootDatum torus(std::size_t rank) {
    return RootDatum({rank, {}, {}, "T" + std::to_string(rank)});
}

std::vector<std::string> names() {
    return {"SL2", "PGL2", "GL2", "SL3", "PGL3", "Sp4", "SO5", "G2", "SL2xPGL2", "T1", "T2"};
}

std::optional<RootDatum> by_name(const std::string& name) {
    if (name == "SL2") return sl2();
    if (name == "PGL2") return pgl2();
    if (name == "GL2") return gl2();
    if (name == "SL3") return sl3();
    if (name == "PGL3") return pgl3();
    if (name == "Sp4") return sp4();
    if (name == "SO5") return so5();
    if (name == "G2") return g2();
    if (name == "SL2xPGL2") return sl2_x_pgl2();
    if (name == "T1") return torus(1);
    if (name == "T2") return torus(2);
    return std::nullopt;
}

}  // namespace fixtures

}  // namespace kzero

#include "kzero/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kzero {

namespace {

Vec primitive(Vec v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, abs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

Vec unit_vector(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

// Calls f on every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

ConvexHull::ConvexHull(std::vector<Weight> points) {
    if (points.empty()) throw std::invalid_argument("convex hull of an empty set");
    const std::size_t r = points.front().size();
    for (const auto& p : points)
        if (p.size() != r) throw std::invalid_argument("points of different lengths");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    points_ = std::move(points);

    const Weight& p0 = points_.front();
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < points_.size(); ++i) diffs.push_back(sub(points_[i], p0));
    std::vector<Vec> normals;
    if (diffs.empty()) {
        for (std::size_t i = 0; i < r; ++i) normals.push_back(unit_vector(r, i));
    } else {
        dimension_ = rank(IntMatrix::from_rows(diffs, r));
        normals = integer_kernel(IntMatrix::from_rows(diffs, r));
    }
    for (auto& c : normals) {
        c = primitive(c);
        equations_.push_back({c, dot(c, p0)});
    }
    if (dimension_ == 0) return;

    // Each facet is spanned (inside the affine span) by `dimension_` affinely independent points.
    std::set<HalfSpace> facets;
    for_each_subset(points_.size(), dimension_, [&](const std::vector<std::size_t>& idx) {
        const Weight& q0 = points_[idx[0]];
        std::vector<Vec> rows;
        for (std::size_t i = 1; i < idx.size(); ++i) rows.push_back(sub(points_[idx[i]], q0));
        for (const auto& c : normals) rows.push_back(c);
        auto kernel = integer_kernel(IntMatrix::from_rows(rows, r));
        if (kernel.size() != 1) return;
        Vec c = primitive(kernel.front());
        Int b = dot(c, q0);
        bool below = true, above = true;
        for (const auto& p : points_) {
            Int v = dot(c, p);
            below = below && v <= b;
            above = above && v >= b;
        }
        if (above && !below) {
            c = negate(c);
            b = -b;
        } else if (!below) {
            return;
        }
        facets.insert({c, b});
    });
    facets_.assign(facets.begin(), facets.end());
}

std::vector<Weight> ConvexHull::vertices() const {
    if (points_.empty()) return {};
    const std::size_t r = points_.front().size();
    std::vector<Weight> out;
    for (const auto& p : points_) {
        std::vector<Vec> rows;
        for (const auto& e : equations_) rows.push_back(e.normal);
        for (const auto& f : facets_)
            if (dot(f.normal, p) == f.bound) rows.push_back(f.normal);
        if (rank(IntMatrix::from_rows(rows, r)) == r) out.push_back(p);
    }
    return out;
}

bool ConvexHull::contains(const Weight& x) const { return contains_scaled(x, 1); }

bool ConvexHull::contains_scaled(const Weight& x, const Int& denominator) const {
    for (const auto& e : equations_)
        if (dot(e.normal, x) != denominator * e.bound) return false;
    for (const auto& f : facets_)
        if (dot(f.normal, x) > denominator * f.bound) return false;
    return true;
}

bool ConvexHull::contains_in_dilate(const Weight& x, const Int& n) const {
    for (const auto& e : equations_)
        if (dot(e.normal, x) != n * e.bound) return false;
    for (const auto& f : facets_)
        if (dot(f.normal, x) > n * f.bound) return false;
    return true;
}

std::pair<Vec, Vec> ConvexHull::bounding_box() const {
    Vec lo = points_.front(), hi = points_.front();
    for (const auto& p : points_)
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    return {lo, hi};
}

OrbitHull orbit_hull(const RootDatum& d, const Weight& lambda) {
    return {dominant_representative(d, lambda), ConvexHull(orbit(d, lambda))};
}

bool hull_contains_orbit(const RootDatum& d, const Weight& mu, const Weight& lambda) {
    for (const auto& w : orbit(d, mu))
        if (!rational_dominance_leq(d, w, lambda)) return false;
    return true;
}

bool orbit_meets_ball(const RootDatum& d, const Weight& nu, const Rational& r2) {
    for (const auto& w : orbit(d, nu))
        if (Rational(dot(w, w)) <= r2) return true;
    return false;
}

Rational covering_radius_squared(const std::vector<Weight>& x) {
    std::set<Weight> distinct(x.begin(), x.end());
    Int m = distinct.size();
    Int top = 0;
    for (const auto& p : distinct) top = std::max(top, dot(p, p));
    return Rational(4 * m * m * top);
}

namespace {

std::set<Weight> tensor_support(const CharacterEngine& e, const std::set<Weight>& from, const Weight& factor) {
    std::set<Weight> out;
    for (const auto& s : from) {
        SemiringElement t = e.tensor(s, factor);
        for (const auto& [w, m] : t.terms()) out.insert(w);
    }
    return out;
}

}  // namespace

std::vector<Weight> power_constituents(const CharacterEngine& e, const Weight& lambda, unsigned n) {
    if (n == 0) return {Weight(lambda.size())};
    std::set<Weight> s{lambda};
    for (unsigned k = 1; k < n; ++k) s = tensor_support(e, s, lambda);
    return {s.begin(), s.end()};
}

TensorFactorCertificate::TensorFactorCertificate(const CharacterEngine& e, Weight lambda)
    : engine_(e), lambda_(std::move(lambda)), lambda_dual_(e.dual_label(lambda_)),
      r2_(covering_radius_squared(orbit(e.datum(), lambda_))) {}

bool TensorFactorCertificate::in_certificate(const Weight& nu) const {
    return orbit_meets_ball(engine_.datum(), nu, r2_);
}

// chi is a factor of V_lambda^n (x) V' iff some summand of V' occurs in (V_lambda^*)^n (x) V_chi.
bool TensorFactorCertificate::covers(const Weight& chi, unsigned n) const {
    auto key = std::make_pair(n, chi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    // Fast path by the PRV theorem: V_chi is a factor of V_{n lambda} (x) V_nu whenever
    // w chi - n lambda is a W-image of nu.
    const Weight top = scale(Int(n), lambda_);
    for (const auto& w : orbit(engine_.datum(), chi))
        if (in_certificate(dominant_representative(engine_.datum(), sub(w, top)))) {
            memo_.emplace(key, true);
            return true;
        }
    std::set<Weight> s{chi};
    for (unsigned k = 0; k < n; ++k) s = tensor_support(engine_, s, lambda_dual_);
    bool found = std::any_of(s.begin(), s.end(), [&](const Weight& nu) { return in_certificate(nu); });
    memo_.emplace(key, found);
    return found;
}

bool TensorFactorCertificate::accepts(const Weight& mu, unsigned n_max) const {
    std::set<Weight> power{mu};
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) power = tensor_support(engine_, power, mu);
        for (const auto& chi : power)
            if (!covers(chi, n)) return false;
    }
    return true;
}

bool tensor_factor_criterion(const CharacterEngine& e, const Weight& mu, const Weight& lambda, unsigned n_max) {
    return TensorFactorCertificate(e, lambda).accepts(mu, n_max);
}

OrderCriteria order_criteria_agree(const CharacterEngine& e, const Weight& mu, const Weight& lambda, unsigned n_max) {
    const RootDatum& d = e.datum();
    return {dominance_leq(d, mu, lambda), hull_contains_orbit(d, mu, lambda),
            tensor_factor_criterion(e, mu, lambda, n_max)};
}

std::string CoverVerdict::to_string() const {
    std::ostringstream out;
    switch (status) {
        case Status::Pass: out << "pass"; break;
        case Status::Fail: out << "fail"; break;
        case Status::Skipped: out << "skipped"; break;
    }
    out << " R^2=" << radius_squared << " points=" << lattice_points;
    if (counterexample) out << " counterexample=" << kzero::to_string(*counterexample);
    return out.str();
}

CoverVerdict quantized_cover_check(const std::vector<Weight>& x, unsigned n, std::size_t point_budget) {
    if (x.empty()) throw std::invalid_argument("quantized_cover_check: empty set");
    if (n == 0) throw std::invalid_argument("quantized_cover_check: n must be positive");
    CoverVerdict verdict;
    verdict.radius_squared = covering_radius_squared(x);
    ConvexHull hull(x);
    auto [lo, hi] = hull.bounding_box();
    const std::size_t r = lo.size();
    Int box = 1;
    for (std::size_t i = 0; i < r; ++i) {
        lo[i] *= n;
        hi[i] *= n;
        box *= hi[i] - lo[i] + 1;
    }
    if (box > point_budget) {
        verdict.status = CoverVerdict::Status::Skipped;
        return verdict;
    }

    std::set<Weight> sums{Weight(r)};
    for (unsigned k = 0; k < n; ++k) {
        std::set<Weight> next;
        for (const auto& s : sums)
            for (const auto& p : hull.points()) next.insert(add(s, p));
        sums = std::move(next);
    }

    Weight p = lo;
    for (;;) {
        if (hull.contains_in_dilate(p, n)) {
            ++verdict.lattice_points;
            bool covered = std::any_of(sums.begin(), sums.end(), [&](const Weight& s) {
                Vec y = sub(p, s);
                return Rational(dot(y, y)) <= verdict.radius_squared;
            });
            if (!covered) {
                verdict.status = CoverVerdict::Status::Fail;
                verdict.counterexample = p;
                return verdict;
            }
        }
        std::size_t i = 0;
        for (; i < r && p[i] == hi[i]; ++i) p[i] = lo[i];
        if (i == r) break;
        ++p[i];
    }
    return verdict;
}

std::vector<Weight> covering_seeds(const CharacterEngine& e) {
    const RootDatum& d = e.datum();
    if (d.semisimple_rank() == d.rank()) return e.monoid_generators();
    std::set<Weight> seeds;
    for (std::size_t i = 0; i < d.rank(); ++i) {
        seeds.insert(dominant_representative(d, unit_vector(d.rank(), i)));
        seeds.insert(dominant_representative(d, negate(unit_vector(d.rank(), i))));
    }
    return {seeds.begin(), seeds.end()};
}

}  // namespace kzero

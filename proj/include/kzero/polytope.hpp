#pragma once

// Exact convex geometry of Weyl orbits and the quantized covering of dilated hulls.

#include "kzero/char_engine.hpp"
#include "kzero/root_datum.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kzero {

/// normal . x <= bound, with a primitive integer normal.
struct HalfSpace {
    Vec normal;
    Int bound;
    friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
    friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
        return a.normal != b.normal ? a.normal < b.normal : a.bound < b.bound;
    }
};

/// Exact H-description of the convex hull of finitely many lattice points: the affine span is
/// cut out by `equations` (normal . x == bound) and the hull inside it by `facets`.
class ConvexHull {
public:
    ConvexHull() = default;
    /// Throws std::invalid_argument on an empty or ragged point set.
    explicit ConvexHull(std::vector<Weight> points);

    const std::vector<Weight>& points() const { return points_; }
    /// Extreme points among the input points.
    std::vector<Weight> vertices() const;
    const std::vector<HalfSpace>& equations() const { return equations_; }
    const std::vector<HalfSpace>& facets() const { return facets_; }
    std::size_t dimension() const { return dimension_; }

    bool contains(const Weight& x) const;
    /// Membership of x / denominator (scaled test, exact).
    bool contains_scaled(const Weight& x, const Int& denominator) const;
    /// Membership in n * hull.
    bool contains_in_dilate(const Weight& x, const Int& n) const;
    /// Axis-aligned bounds of the input points.
    std::pair<Vec, Vec> bounding_box() const;

private:
    std::vector<Weight> points_;
    std::vector<HalfSpace> equations_;
    std::vector<HalfSpace> facets_;
    std::size_t dimension_ = 0;
};

/// Convex hull of a W-orbit.
struct OrbitHull {
    Weight highest;
    ConvexHull hull;
    const std::vector<Weight>& vertices() const { return hull.points(); }
};

OrbitHull orbit_hull(const RootDatum& d, const Weight& lambda);

/// Conv(W mu) inside Conv(W lambda), decided by w mu <=_Q lambda for every w (which also
/// forces lambda - w mu into the span of the roots).
bool hull_contains_orbit(const RootDatum& d, const Weight& mu, const Weight& lambda);

/// Whether the W-orbit of nu meets the closed Euclidean ball of squared radius r2.
bool orbit_meets_ball(const RootDatum& d, const Weight& nu, const Rational& r2);

/// R^2 = (2 |X| max ||x||)^2 for the covering of dilates of Conv(X).
Rational covering_radius_squared(const std::vector<Weight>& x);

struct OrderCriteria {
    bool a = false;
    bool b = false;
    bool c = false;
    bool agree() const { return a == b && b == c; }
};

/// Evaluates the three equivalent order criteria. (c) uses the certificate built from the ball
/// of radius R around 0 for X = W lambda, checked for 1 <= n <= n_max.
OrderCriteria order_criteria_agree(const CharacterEngine& e, const Weight& mu, const Weight& lambda,
                                   unsigned n_max = 3);

/// The certificate V' = sum of V_nu over dominant nu whose orbit meets the ball of radius
/// R = 2 |W lambda| max ||w lambda||; memoizes per-constituent answers.
class TensorFactorCertificate {
public:
    TensorFactorCertificate(const CharacterEngine& e, Weight lambda);

    const Weight& lambda() const { return lambda_; }
    const Rational& radius_squared() const { return r2_; }
    /// Whether V_nu is a summand of V'.
    bool in_certificate(const Weight& nu) const;
    /// Whether V_chi is a factor of V_lambda^n (x) V'.
    bool covers(const Weight& chi, unsigned n) const;
    /// Every factor of V_mu^n is a factor of V_lambda^n (x) V' for 1 <= n <= n_max.
    bool accepts(const Weight& mu, unsigned n_max) const;

private:
    const CharacterEngine& engine_;
    Weight lambda_;
    Weight lambda_dual_;
    Rational r2_;
    mutable std::map<std::pair<unsigned, Weight>, bool> memo_;
};

/// (c) alone, with the same certificate.
bool tensor_factor_criterion(const CharacterEngine& e, const Weight& mu, const Weight& lambda,
                             unsigned n_max = 3);

/// Constituent set of V^{x n} (n >= 1), computed on supports only.
std::vector<Weight> power_constituents(const CharacterEngine& e, const Weight& lambda, unsigned n);

struct CoverVerdict {
    enum class Status { Pass, Fail, Skipped };
    Status status = Status::Pass;
    Rational radius_squared;
    std::size_t lattice_points = 0;
    /// A lattice point of Conv(nX) with no decomposition, on failure.
    std::optional<Weight> counterexample;
    std::string to_string() const;
};

constexpr std::size_t kDefaultPointBudget = 2'000'000;

/// Every lattice point of Conv(nX) is an n-fold sum of elements of X plus a vector of norm <= R.
CoverVerdict quantized_cover_check(const std::vector<Weight>& x, unsigned n,
                                   std::size_t point_budget = kDefaultPointBudget);

/// Dominant weights whose W-orbits feed the covering check: the dominant-monoid generators when
/// the roots span X* over Q, otherwise the dominant representatives of the +-e_i.
std::vector<Weight> covering_seeds(const CharacterEngine& e);

}  // namespace kzero

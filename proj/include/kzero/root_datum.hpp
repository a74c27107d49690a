#pragma once

#include "kzero/lattice.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kzero {

/// Coordinates in the character lattice X* = Z^rank.
using Weight = Vec;
/// Coordinates in the cocharacter lattice X_* = Z^rank, paired with X* by the dot product.
using Coweight = Vec;

/// Raw, unvalidated presentation of a based root datum.
struct RootDatumData {
    std::size_t rank = 0;
    std::vector<Weight> simple_roots;
    std::vector<Coweight> simple_coroots;
    std::string name;
};

struct Verdict {
    bool ok = true;
    /// Name of the first violated axiom, empty when ok.
    std::string axiom;
    std::string detail;

    static Verdict accept() { return {}; }
    static Verdict reject(std::string axiom, std::string detail) {
        return {false, std::move(axiom), std::move(detail)};
    }
};

/// Checks lattice ranks, Cartan diagonal and sign pattern, linear independence and finite type.
Verdict validate_root_datum(const RootDatumData& d);

class InvalidRootDatum : public std::runtime_error {
public:
    explicit InvalidRootDatum(Verdict v)
        : std::runtime_error(v.axiom + ": " + v.detail), verdict_(std::move(v)) {}
    const Verdict& verdict() const { return verdict_; }

private:
    Verdict verdict_;
};

/// A validated based root datum with its derived root system. Immutable; cheap to copy.
class RootDatum {
public:
    /// Throws InvalidRootDatum when validation fails.
    explicit RootDatum(RootDatumData data);

    std::size_t rank() const { return data_.rank; }
    std::size_t semisimple_rank() const { return data_.simple_roots.size(); }
    const std::vector<Weight>& simple_roots() const { return data_.simple_roots; }
    const std::vector<Coweight>& simple_coroots() const { return data_.simple_coroots; }
    const std::string& name() const { return data_.name; }
    const RootDatumData& data() const { return data_; }

    /// A(i, j) = <coroot_i, root_j>.
    const IntMatrix& cartan_matrix() const { return derived_->cartan; }
    const std::vector<Weight>& positive_roots() const { return derived_->positive_roots; }
    const std::vector<Coweight>& positive_coroots() const { return derived_->positive_coroots; }
    /// Sum of the positive roots (twice the Weyl vector, always integral).
    const Weight& two_rho() const { return derived_->two_rho; }

    /// Pairings <coroot_i, x> for all simple coroots.
    Vec simple_pairings(const Weight& x) const;
    /// Coefficients of x in the simple roots, if x lies in their rational span.
    std::optional<RatVec> root_coordinates(const Weight& x) const;
    /// s_i(x) = x - <coroot_i, x> root_i.
    Weight reflect(std::size_t i, const Weight& x) const;
    /// Dual action on X_*: y - <y, root_i> coroot_i.
    Coweight reflect_coweight(std::size_t i, const Coweight& y) const;
    /// Integer functionals vanishing on every root (a basis of the central directions).
    const std::vector<Vec>& central_functionals() const { return derived_->central; }
    /// Invariant symmetric form sum over positive coroots of <c,x><c,y>.
    Int form(const Weight& x, const Weight& y) const;

    /// Reflection matrix of s_i acting on X* (column convention, x -> S x).
    IntMatrix reflection_matrix(std::size_t i) const;

    RootDatum dual() const;

private:
    struct Derived {
        IntMatrix cartan;
        std::vector<Weight> positive_roots;
        std::vector<Coweight> positive_coroots;
        Weight two_rho;
        // root coordinates: x = (projector * v) / denominator when v is in the span
        IntMatrix projector;
        Int denominator;
        std::vector<Vec> central;
    };
    RootDatumData data_;
    std::shared_ptr<const Derived> derived_;
};

bool is_dominant(const RootDatum& d, const Weight& lambda);

/// mu <= lambda iff lambda - mu is a nonnegative integer combination of simple roots.
bool dominance_leq(const RootDatum& d, const Weight& mu, const Weight& lambda);

/// Same with rational nonnegative coefficients.
bool rational_dominance_leq(const RootDatum& d, const Weight& mu, const Weight& lambda);

struct WeylGroup {
    std::vector<IntMatrix> generators;
    /// All elements, sorted; the identity is among them.
    std::vector<IntMatrix> elements;
    std::size_t order() const { return elements.size(); }
};

class WeylClosureOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultWeylBound = 10'000'000;

/// Closure of the simple reflections. Throws WeylClosureOverflow past `bound` elements.
WeylGroup weyl_group(const RootDatum& d, std::size_t bound = kDefaultWeylBound);

/// W-orbit of lambda, sorted lexicographically.
std::vector<Weight> orbit(const RootDatum& d, const Weight& lambda);

Weight dominant_representative(const RootDatum& d, const Weight& lambda);

/// Dominant representative of x together with the parity of the number of reflections used
/// (odd = true) and whether x lies on a reflecting wall after reduction.
struct ChamberReduction {
    Weight dominant;
    bool odd = false;
    bool singular = false;
};
ChamberReduction reduce_to_chamber(const RootDatum& d, Weight x);

/// An isomorphism of based root data: `weight_map` sends X*(d2) -> X*(d1) with root_j of d2
/// going to root_{permutation[j]} of d1; `coweight_map` is its inverse transpose.
struct RootDatumIsomorphism {
    IntMatrix weight_map;
    IntMatrix coweight_map;
    std::vector<std::size_t> permutation;
};

std::optional<RootDatumIsomorphism> root_data_isomorphic(const RootDatum& d1, const RootDatum& d2);

/// Named fixtures in the Z^rank normalization.
namespace fixtures {
RootDatum sl2();
RootDatum pgl2();
RootDatum gl2();
RootDatum sl3();
RootDatum pgl3();
RootDatum sp4();
RootDatum so5();
RootDatum g2();
RootDatum sl2_x_pgl2();
RootDatum torus(std::size_t rank);
/// Lookup by name ("SL2", "PGL2", "GL2", "SL3", "PGL3", "Sp4", "SO5", "G2", "SL2xPGL2", "T2").
std::optional<RootDatum> by_name(const std::string& name);
std::vector<std::string> names();
}  // namespace fixtures

}  // namespace kzero

#pragma once

#include "kzero/root_datum.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kzero {

/// Weight multiplicities of a representation, keyed lexicographically.
using FormalCharacter = std::map<Weight, Int>;

/// A class in the Grothendieck semiring: dominant highest weights with positive multiplicities.
/// The empty element is the additive zero.
class SemiringElement {
public:
    SemiringElement() = default;
    static SemiringElement irreducible(Weight lambda) {
        SemiringElement e;
        e.add(std::move(lambda), 1);
        return e;
    }

    /// Adds `mult` copies of V_lambda (mult may be negative while accumulating; zero entries vanish).
    void add(const Weight& lambda, const Int& mult);
    void add(const SemiringElement& other);

    Int multiplicity(const Weight& lambda) const;
    bool contains(const Weight& lambda) const { return terms_.count(lambda) != 0; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Weight, Int>& terms() const { return terms_; }
    bool all_positive() const;

    /// "nu : mult" lines in canonical (decreasing lexicographic) order.
    std::string to_lines() const;

    friend bool operator==(const SemiringElement&, const SemiringElement&) = default;

private:
    std::map<Weight, Int> terms_;
};

class NotDominant : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integer polynomial in the classes of the dominant-monoid generators.
struct FundamentalPolynomial {
    /// Generators (dominant weights) in the order used for exponents.
    std::vector<Weight> generators;
    /// exponent vector -> coefficient
    std::map<std::vector<unsigned>, Int> terms;

    std::string to_string(const std::vector<std::string>& names = {}) const;
};

/// Memoizing realization of the representation semiring of a root datum. Thread-safe: concurrent
/// readers share the caches, insertion is exclusive, and every result is independent of call order.
class CharacterEngine {
public:
    explicit CharacterEngine(RootDatum datum);

    const RootDatum& datum() const { return datum_; }

    /// Full weight multiset of V_lambda (Freudenthal recursion).
    std::shared_ptr<const FormalCharacter> character(const Weight& lambda) const;
    /// Multiplicities on dominant weights only.
    std::shared_ptr<const FormalCharacter> dominant_character(const Weight& lambda) const;
    /// Weyl dimension formula.
    Int dimension(const Weight& lambda) const;
    /// V_lambda (x) V_mu decomposed into irreducibles (Brauer-Klimyk).
    SemiringElement tensor(const Weight& lambda, const Weight& mu) const;
    SemiringElement multiply(const SemiringElement& a, const SemiringElement& b) const;
    std::vector<Weight> prv_components(const Weight& lambda, const Weight& mu) const;
    /// -w0 lambda.
    Weight dual_label(const Weight& lambda) const;

    /// Hilbert basis of the monoid of dominant weights (requires roots spanning X* over Q).
    std::vector<Weight> monoid_generators() const;
    /// Polynomial P in the generator classes with P = [V_lambda] in the representation ring.
    FundamentalPolynomial express_in_fundamentals(const Weight& lambda) const;
    /// Expands a polynomial back into a signed combination of irreducible classes.
    SemiringElement evaluate(const FundamentalPolynomial& p) const;

private:
    void require_dominant(const Weight& lambda, const char* what) const;
    std::shared_ptr<const FormalCharacter> compute_dominant_character(const Weight& lambda) const;

    RootDatum datum_;
    mutable std::shared_mutex mutex_;
    mutable std::map<Weight, std::shared_ptr<const FormalCharacter>> dominant_chars_;
    mutable std::map<Weight, std::shared_ptr<const FormalCharacter>> chars_;
    mutable std::map<std::pair<Weight, Weight>, SemiringElement> tensors_;
    mutable std::map<Weight, FundamentalPolynomial> expressions_;
};

// Free-function forms of the engine operations (each builds a private engine).
FormalCharacter irreducible_character(const RootDatum& d, const Weight& lambda);
Int dimension(const RootDatum& d, const Weight& lambda);
SemiringElement tensor_decompose(const RootDatum& d, const Weight& lambda, const Weight& mu);
std::vector<Weight> prv_components(const RootDatum& d, const Weight& lambda, const Weight& mu);
Weight dual_label(const RootDatum& d, const Weight& lambda);
FundamentalPolynomial express_in_fundamentals(const RootDatum& d, const Weight& lambda);

}  // namespace kzero

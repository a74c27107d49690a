#pragma once

// Recovery of a root datum from an opaque semiring table.

#include "kzero/char_engine.hpp"
#include "kzero/oracle.hpp"
#include "kzero/root_datum.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kzero {

/// A stage failure: `stage` is one of validate, order, addition, lattice, roots, coroots, datum,
/// certify.
class ReconstructionError : public std::runtime_error {
public:
    ReconstructionError(std::string stage, const std::string& reason, std::vector<std::string> witnesses = {})
        : std::runtime_error(stage + ": " + reason), stage_(std::move(stage)), reason_(reason),
          witnesses_(std::move(witnesses)) {}
    const std::string& stage() const { return stage_; }
    const std::string& reason() const { return reason_; }
    const std::vector<std::string>& witnesses() const { return witnesses_; }

private:
    std::string stage_;
    std::string reason_;
    std::vector<std::string> witnesses_;
};

enum class OrderRelation { Leq, NotLeq, Unknown };

/// Why mu <= lambda holds. For a direct certificate, theta = [nu][nu*] and the constituents of
/// mu * nu lie among those of lambda * nu, so every constituent of mu^n theta is one of
/// lambda^n theta for all n. `via` marks a pair obtained by transitivity.
struct OrderCertificate {
    std::vector<LabelId> theta;
    std::optional<LabelId> via;
    /// Largest n for which the implication was also replayed literally on the table (0 = none).
    unsigned replayed_to = 0;
};

struct RecoveredOrder {
    /// Certified pairs (mu, lambda) meaning mu <= lambda; reflexive pairs included.
    std::map<std::pair<LabelId, LabelId>, OrderCertificate> leq;
    /// Pairs (mu, lambda) refuted through antisymmetry.
    std::set<std::pair<LabelId, LabelId>> not_leq;
    unsigned n_max = 0;
    unsigned theta_depth = 0;

    OrderRelation relation(LabelId mu, LabelId lambda) const;
    std::size_t unknown_pairs(std::size_t window_size) const;
};

struct RecoveredMonoid {
    LabelId zero = 0;
    /// x (+) y for x <= y (by id).
    std::map<std::pair<LabelId, LabelId>, LabelId> sums;
    /// Pairs with a fully in-window product but no certified maximum.
    std::vector<std::pair<LabelId, LabelId>> undecided;

    std::optional<LabelId> add(LabelId x, LabelId y) const;
};

struct RecoveredLattice {
    std::size_t rank = 0;
    /// Labels occurring in a nontrivial identity x (+) y = z, plus the zero.
    std::vector<LabelId> core;
    /// (+)-irreducible core labels.
    std::vector<LabelId> generators;
    std::map<LabelId, Vec> embedding;
};

struct ReconstructionParams {
    unsigned n_max = 3;
    unsigned theta_depth = 2;
    /// Search nodes allowed when placing labels outside the core.
    std::size_t placement_budget = 100'000;
};

struct ReconstructionReport {
    RecoveredOrder order;
    RecoveredMonoid monoid;
    RecoveredLattice lattice;
    std::vector<Vec> simple_roots;
    std::vector<Vec> simple_coroots;
    std::size_t weyl_order = 0;
    std::optional<RootDatum> datum;
    /// Weights of every label after certification.
    std::map<LabelId, Weight> placement;

    bool certified = false;
    std::string failed_stage;
    std::string reason;
    std::vector<std::string> witnesses;

    /// Deterministic JSON; label ids are written as label names.
    std::string to_json(const OracleTable& t) const;
};

RecoveredOrder recover_order(const OracleTable& t, unsigned n_max = 3, unsigned theta_depth = 2);
RecoveredMonoid recover_addition(const OracleTable& t, const RecoveredOrder& order);
RecoveredLattice recover_lattice(const OracleTable& t, const RecoveredMonoid& m);
std::vector<Vec> recover_simple_roots(const OracleTable& t, const RecoveredLattice& lattice);
std::vector<Vec> recover_simple_coroots(const OracleTable& t, const RecoveredLattice& lattice,
                                        const std::vector<Vec>& roots);
/// Weights for every label, consistent with every product and dual line; throws stage certify.
std::map<LabelId, Weight> certify_table(const OracleTable& t, const RootDatum& d, const RecoveredLattice& lattice,
                                        std::size_t budget = 100'000);

/// Runs every stage; stage failures are reported in the result, not thrown.
ReconstructionReport recover_datum(const OracleTable& t, const ReconstructionParams& params = {});

/// Datum stored in a report produced by to_json, or nullopt when the report is not certified.
/// Throws std::invalid_argument on malformed JSON.
std::optional<RootDatum> datum_from_report(const std::string& json);

}  // namespace kzero

#pragma once

// Opaque-label presentation of a fragment of the representation semiring.

#include "kzero/root_datum.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kzero {

using LabelId = std::size_t;

/// Decomposition of a product of two window labels; `known == false` is the "?" marker.
struct ProductEntry {
    bool known = false;
    /// (constituent, multiplicity), sorted by label id, multiplicities positive.
    std::vector<std::pair<LabelId, Int>> terms;

    bool contains(LabelId z) const;
    Int multiplicity(LabelId z) const;
    friend bool operator==(const ProductEntry&, const ProductEntry&) = default;
};

/// Immutable table. Labels are kept sorted by name; ids index that order. Window labels may be
/// multiplied; extra labels only occur as constituents.
class OracleTable {
public:
    struct Builder;

    std::size_t size() const { return names_.size(); }
    const std::string& name(LabelId id) const { return names_[id]; }
    std::optional<LabelId> find(const std::string& name) const;
    bool in_window(LabelId id) const { return window_[id]; }
    const std::vector<LabelId>& window() const { return window_ids_; }
    const std::vector<LabelId>& extras() const { return extra_ids_; }
    LabelId unit() const { return unit_; }
    /// nullopt when the table carries no dual line for the label.
    std::optional<LabelId> dual(LabelId id) const;
    /// nullptr when the pair has no product line.
    const ProductEntry* product(LabelId x, LabelId y) const;
    /// All product lines keyed by (x, y) with x <= y.
    const std::map<std::pair<LabelId, LabelId>, ProductEntry>& products() const { return products_; }

    /// Canonical line-oriented text; byte-stable.
    std::string serialize() const;

private:
    std::vector<std::string> names_;
    std::map<std::string, LabelId> index_;
    std::vector<bool> window_;
    std::vector<LabelId> window_ids_;
    std::vector<LabelId> extra_ids_;
    LabelId unit_ = 0;
    std::vector<std::optional<LabelId>> dual_;
    std::map<std::pair<LabelId, LabelId>, ProductEntry> products_;
};

/// Assembles a table from named pieces; `build` checks referential integrity only.
struct OracleTable::Builder {
    std::vector<std::string> window;
    std::vector<std::string> extra;
    std::string unit;
    std::vector<std::pair<std::string, std::string>> duals;
    struct Product {
        std::string x, y;
        bool known = true;
        std::vector<std::pair<std::string, Int>> terms;
    };
    std::vector<Product> products;

    /// Throws std::invalid_argument on unknown or duplicate labels and conflicting lines.
    OracleTable build() const;
};

class OracleParseError : public std::runtime_error {
public:
    OracleParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Parses the text format written by serialize(); errors carry 1-based line and column.
OracleTable parse_oracle(const std::string& text);

struct MaterializeOptions {
    std::uint64_t seed = 1;
    /// Constituents with a pairing coordinate above this bound make the product "?" (0 = no limit).
    unsigned long horizon = 0;
};

/// A generated table together with the hidden label -> weight provenance (harness use only).
struct MaterializedOracle {
    OracleTable table;
    std::map<std::string, Weight> provenance;
};

/// Dominant weights whose simple pairings lie in [0, B] and whose central coordinates lie in
/// [-B, B], sorted lexicographically.
std::vector<Weight> window_weights(const RootDatum& d, unsigned long bound);

MaterializedOracle materialize_oracle(const RootDatum& d, unsigned long bound,
                                      const MaterializeOptions& options = {});

struct OracleVerdict {
    bool ok = true;
    std::string axiom;
    std::vector<std::string> witnesses;
    std::string detail;
};

/// Checks unit, duality, closure, Schur multiplicities and associativity on computable triples.
OracleVerdict validate_oracle(const OracleTable& t);

}  // namespace kzero

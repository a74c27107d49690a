#pragma once

// Exact integer / rational linear algebra on small dense matrices.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kzero {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Vec = std::vector<Int>;
using RatVec = std::vector<Rational>;

/// Row-major dense integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    /// Matrix whose rows are the given vectors (all of length `cols`).
    static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<Vec>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;
    IntMatrix transposed() const;

    Vec apply(const Vec& v) const;
    IntMatrix operator*(const IntMatrix& other) const;

    const std::vector<Int>& data() const { return data_; }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.data_ < b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

Int dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Int& k, const Vec& v);
Vec negate(const Vec& v);
bool is_zero(const Vec& v);
std::string to_string(const Vec& v);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);
/// Determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

/// Solve sum_j x_j * columns[j] = target over Q. Returns nullopt when the target is
/// not in the span. The columns must be linearly independent.
std::optional<RatVec> solve_in_span(const std::vector<Vec>& columns, const Vec& target);

/// Smith normal form U * A * V = D with U, V unimodular.
struct SmithForm {
    IntMatrix U;
    IntMatrix V;
    IntMatrix D;
    std::size_t rank = 0;
    /// Nonzero diagonal entries of D, positive and each dividing the next.
    std::vector<Int> invariants;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Integer solutions of A x = b: a particular solution plus a basis of the integer kernel.
struct IntegerSolution {
    Vec particular;
    std::vector<Vec> kernel;
};

std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const Vec& b);

/// Basis of the integer kernel { x in Z^n : A x = 0 }.
std::vector<Vec> integer_kernel(const IntMatrix& a);

/// Inverse of a unimodular matrix; nullopt if det != +-1.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m);

}  // namespace kzero

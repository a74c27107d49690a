#include "kzero/lattice.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace kzero {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<Vec>& columns, std::size_t rows) {
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw std::invalid_argument("from_columns: ragged input");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vec IntMatrix::row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec IntMatrix::column(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vec IntMatrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Int s = 0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
        out[r] = std::move(s);
    }
    return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
        }
    return out;
}

Int dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(const Int& k, const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
    return out;
}

Vec negate(const Vec& v) { return scale(Int(-1), v); }

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

namespace {

using RatMatrix = std::vector<RatVec>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < ncols && prow < m.size(); ++c) {
        std::size_t sel = prow;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[prow]);
        Rational inv = 1 / m[prow][c];
        for (auto& x : m[prow]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == prow || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[prow][k];
        }
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

RatMatrix to_rational(const IntMatrix& a) {
    RatMatrix m(a.rows(), RatVec(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = Rational(a(r, c));
    return m;
}

}  // namespace

std::size_t rank(const IntMatrix& a) {
    RatMatrix m = to_rational(a);
    return row_reduce(m, a.cols()).size();
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    std::vector<Vec> m(n, Vec(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m[r][c] = a(r, c);
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t sel = k + 1;
            while (sel < n && m[sel][k] == 0) ++sel;
            if (sel == n) return 0;
            std::swap(m[sel], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::optional<RatVec> solve_in_span(const std::vector<Vec>& columns, const Vec& target) {
    const std::size_t k = columns.size();
    const std::size_t n = target.size();
    RatMatrix m(n, RatVec(k + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) m[r][c] = Rational(columns[c][r]);
        m[r][k] = Rational(target[r]);
    }
    auto pivots = row_reduce(m, k + 1);
    RatVec x(k);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == k) return std::nullopt;  // inconsistent row
        x[pivots[i]] = m[i][k];
    }
    if (pivots.size() < k) throw std::invalid_argument("solve_in_span: dependent columns");
    return x;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}
// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += f * m(src, c);
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += f * m(r, src);
}
void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    SmithForm s{IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()), a, 0, {}};
    IntMatrix& d = s.D;
    const std::size_t m = d.rows();
    const std::size_t n = d.cols();
    std::size_t t = 0;
    while (t < m && t < n) {
        // pivot: smallest nonzero absolute value in the trailing block
        bool found = false;
        std::size_t pr = t, pc = t;
        Int best;
        for (std::size_t r = t; r < m; ++r)
            for (std::size_t c = t; c < n; ++c)
                if (d(r, c) != 0 && (!found || abs(d(r, c)) < best)) {
                    found = true;
                    best = abs(d(r, c));
                    pr = r;
                    pc = c;
                }
        if (!found) break;
        swap_rows(d, t, pr);
        swap_rows(s.U, t, pr);
        swap_cols(d, t, pc);
        swap_cols(s.V, t, pc);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t r = t + 1; r < m; ++r) {
                if (d(r, t) == 0) continue;
                Int q = d(r, t) / d(t, t);
                add_row(d, r, t, -q);
                add_row(s.U, r, t, -q);
                if (d(r, t) != 0) {
                    swap_rows(d, t, r);
                    swap_rows(s.U, t, r);
                    clean = false;
                }
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (d(t, c) == 0) continue;
                Int q = d(t, c) / d(t, t);
                add_col(d, c, t, -q);
                add_col(s.V, c, t, -q);
                if (d(t, c) != 0) {
                    swap_cols(d, t, c);
                    swap_cols(s.V, t, c);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility of the trailing block
            for (std::size_t r = t + 1; r < m && clean; ++r)
                for (std::size_t c = t + 1; c < n; ++c)
                    if (d(r, c) % d(t, t) != 0) {
                        add_row(d, t, r, Int(1));
                        add_row(s.U, t, r, Int(1));
                        clean = false;
                        break;
                    }
        }
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(s.U, t);
        }
        s.invariants.push_back(d(t, t));
        ++t;
    }
    s.rank = t;
    return s;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
    SmithForm s = smith_normal_form(a);
    Vec c = s.U.apply(b);
    Vec y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.invariants[i] != 0) return std::nullopt;
            y[i] = c[i] / s.invariants[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    IntegerSolution out;
    out.particular = s.V.apply(y);
    for (std::size_t j = s.rank; j < a.cols(); ++j) out.kernel.push_back(s.V.column(j));
    return out;
}

std::vector<Vec> integer_kernel(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    std::vector<Vec> out;
    for (std::size_t j = s.rank; j < a.cols(); ++j) out.push_back(s.V.column(j));
    return out;
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Int det = determinant(m);
    if (det != 1 && det != -1) return std::nullopt;
    RatMatrix aug(n, RatVec(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug[r][c] = Rational(m(r, c));
        aug[r][n + r] = 1;
    }
    row_reduce(aug, n);
    IntMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = numerator(aug[r][n + c]);
    return inv;
}

}  // namespace kzero

#include "gsflow/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace gsflow {

using Rational = boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<Integer>>;

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    std::size_t ncols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != ncols) throw Error(ErrorKind::Range, "ragged matrix rows");
        for (std::size_t c = 0; c < ncols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void IntMatrix::check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_.size()) {
        throw Error(ErrorKind::Range, "matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") out of range for " + std::to_string(rows_) + "x" +
                                          std::to_string(cols_.size()));
    }
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = cols_[c].find(r);
    return it == cols_[c].end() ? Integer(0) : it->second;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Integer& value) {
    check(r, c);
    if (value == 0) {
        cols_[c].erase(r);
    } else {
        cols_[c][r] = value;
    }
}

void IntMatrix::add_to(std::size_t r, std::size_t c, const Integer& value) {
    if (value != 0) set(r, c, at(r, c) + value);
}

const IntMatrix::Column& IntMatrix::column(std::size_t c) const {
    if (c >= cols_.size()) throw Error(ErrorKind::Range, "column index out of range");
    return cols_[c];
}

IntMatrix::Column IntMatrix::row(std::size_t r) const {
    if (r >= rows_) throw Error(ErrorKind::Range, "row index out of range");
    Column out;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        auto it = cols_[c].find(r);
        if (it != cols_[c].end()) out.emplace(c, it->second);
    }
    return out;
}

std::size_t IntMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& col : cols_) n += col.size();
    return n;
}

bool IntMatrix::is_strictly_upper() const {
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        if (!cols_[c].empty() && cols_[c].rbegin()->first >= c) return false;
    }
    return true;
}

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    IntMatrix out(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) out.set(i, j, at(rows[i], cols[j]));
    }
    return out;
}

Dense IntMatrix::dense() const {
    Dense d(rows_, std::vector<Integer>(cols_.size()));
    for (std::size_t c = 0; c < cols_.size(); ++c) {
        for (const auto& [r, v] : cols_[c]) d[r][c] = v;
    }
    return d;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

IntMatrix col_combine(const IntMatrix& m, std::size_t src, std::size_t dst, const Integer& c) {
    if (src >= m.cols() || dst >= m.cols()) throw Error(ErrorKind::Range, "column index out of range");
    if (src == dst) throw Error(ErrorKind::Range, "col_combine requires distinct columns");
    IntMatrix out = m;
    if (c == 0) return out;
    for (const auto& [r, v] : m.column(src)) out.add_to(r, dst, c * v);
    return out;
}

IntMatrix row_combine(const IntMatrix& m, std::size_t src, std::size_t dst, const Integer& c) {
    if (src >= m.rows() || dst >= m.rows()) throw Error(ErrorKind::Range, "row index out of range");
    if (src == dst) throw Error(ErrorKind::Range, "row_combine requires distinct rows");
    IntMatrix out = m;
    if (c == 0) return out;
    for (const auto& [col, v] : m.row(src)) out.add_to(dst, col, c * v);
    return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::Range, "dimension mismatch in multiply");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (const auto& [k, bv] : b.column(j)) {
            for (const auto& [i, av] : a.column(k)) out.add_to(i, j, av * bv);
        }
    }
    return out;
}

IntMatrix add(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::Range, "dimension mismatch in add");
    IntMatrix out = a;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (const auto& [i, v] : b.column(j)) out.add_to(i, j, v);
    }
    return out;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix out(m.cols(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (const auto& [i, v] : m.column(j)) out.set(j, i, v);
    }
    return out;
}

Integer determinant(const IntMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::Range, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Dense a = m.dense();
    Integer sign = 1;
    Integer prev = 1;
    // Bareiss fraction-free elimination.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

IntMatrix unimodular_inverse(const IntMatrix& t) {
    if (!t.is_square()) throw Error(ErrorKind::Range, "inverse of non-square matrix");
    const std::size_t n = t.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [i, v] : t.column(j)) a[i][j] = Rational(v);
    }
    for (std::size_t i = 0; i < n; ++i) a[i][n + i] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) throw Error(ErrorKind::NonUnimodular, "singular matrix is not unimodular");
        std::swap(a[k], a[p]);
        Rational piv = a[k][k];
        for (auto& x : a[k]) x /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rational f = a[i][k];
            for (std::size_t j = k; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& v = a[i][n + j];
            if (denominator(v) != 1) throw Error(ErrorKind::NonUnimodular, "matrix is not unimodular");
            out.set(i, j, numerator(v));
        }
    }
    return out;
}

IntMatrix conjugate(const IntMatrix& m, const IntMatrix& t) {
    if (!m.is_square() || !t.is_square()) throw Error(ErrorKind::Range, "conjugate requires square matrices");
    if (m.rows() != t.rows()) throw Error(ErrorKind::Range, "conjugate size mismatch");
    return multiply(multiply(unimodular_inverse(t), m), t);
}

namespace {

Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

void swap_rows(Dense& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(Dense& a, std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
}

// Moves the smallest nonzero entry of the trailing block to (t,t). Returns false if the block is zero.
bool bring_min_to(Dense& a, std::size_t t) {
    const std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
    std::size_t bi = m, bj = n;
    Integer best;
    for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
            if (a[i][j] == 0) continue;
            Integer v = abs_value(a[i][j]);
            if (bi == m || v < best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    if (bi == m) return false;
    swap_rows(a, t, bi);
    swap_cols(a, t, bj);
    return true;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& matrix) {
    Dense a = matrix.dense();
    const std::size_t m = matrix.rows(), n = matrix.cols();
    const std::size_t d = std::min(m, n);
    SmithForm out;
    out.diagonal.assign(d, 0);
    for (std::size_t t = 0; t < d; ++t) {
        if (!bring_min_to(a, t)) break;
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) dirty = true;
            }
            if (dirty) {
                bring_min_to(a, t);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
                        fixed = true;
                        break;
                    }
                }
            }
            if (!fixed) break;
        }
        out.diagonal[t] = abs_value(a[t][t]);
        ++out.rank;
    }
    return out;
}

std::vector<HomologyGroup> homology_of_complex(const std::vector<IntMatrix>& boundaries) {
    const std::size_t top = boundaries.size();
    std::vector<HomologyGroup> out(top);
    if (top == 0) return out;
    if (boundaries[0].rows() != 0) throw Error(ErrorKind::Range, "boundaries[0] must have zero rows");
    for (std::size_t k = 1; k < top; ++k) {
        if (boundaries[k].rows() != boundaries[k - 1].cols()) {
            throw Error(ErrorKind::Range, "boundary dimensions do not chain at degree " + std::to_string(k));
        }
        if (!multiply(boundaries[k - 1], boundaries[k]).is_zero()) {
            throw Error(ErrorKind::Structural, "boundary composition is nonzero at degree " + std::to_string(k));
        }
    }
    std::vector<SmithForm> snf;
    snf.reserve(top);
    for (const auto& b : boundaries) snf.push_back(smith_normal_form(b));
    for (std::size_t k = 0; k < top; ++k) {
        std::size_t dim = boundaries[k].cols();
        std::size_t next_rank = k + 1 < top ? snf[k + 1].rank : 0;
        out[k].betti = dim - snf[k].rank - next_rank;
        if (k + 1 < top) {
            for (const auto& v : snf[k + 1].diagonal) {
                if (v > 1) out[k].torsion.push_back(v);
            }
        }
    }
    return out;
}

std::string to_string(const Integer& v) { return v.str(); }

std::string to_text(const IntMatrix& m) {
    std::ostringstream os;
    os << m.rows() << ' ' << m.cols() << '\n';
    auto d = m.dense();
    for (const auto& row : d) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ' ';
            os << row[c];
        }
        os << '\n';
    }
    return os.str();
}

IntMatrix matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw Error(ErrorKind::Validation, "matrix text: missing 'rows cols' header");
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::string tok;
            if (!(is >> tok)) {
                throw Error(ErrorKind::Validation, "matrix text: missing entry at row " + std::to_string(r + 1));
            }
            try {
                m.set(r, c, Integer(tok));
            } catch (const std::runtime_error&) {
                throw Error(ErrorKind::Validation, "matrix text: bad integer '" + tok + "'");
            }
        }
    }
    std::string extra;
    if (is >> extra) throw Error(ErrorKind::Validation, "matrix text: trailing data");
    return m;
}

}  // namespace gsflow

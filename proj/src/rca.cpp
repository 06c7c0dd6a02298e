#include "gsflow/rca.hpp"

#include <set>
#include <string>
#include <tuple>

namespace gsflow {

const IntMatrix& RcaTrace::delta(int r) const {
    if (r < 1 || r > last_round()) throw Error(ErrorKind::Range, "round " + std::to_string(r) + " out of range");
    return matrices[static_cast<std::size_t>(r - 1)];
}

IntMatrix unitriangular_inverse(const IntMatrix& t) {
    if (!t.is_square()) throw Error(ErrorKind::Range, "inverse of non-square matrix");
    const std::size_t n = t.rows();
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [i, v] : t.column(j)) {
            if (i > j || (i == j && v != 1)) throw Error(ErrorKind::NonUnimodular, "matrix is not upper unitriangular");
        }
        if (t.at(j, j) != 1) throw Error(ErrorKind::NonUnimodular, "matrix is not upper unitriangular");
    }
    // Solve T X = I row by row from the bottom: X_i = e_i - sum_{l>i} T[i][l] X_l.
    std::vector<IntMatrix::Column> rows(n);
    for (std::size_t ii = n; ii-- > 0;) {
        IntMatrix::Column acc;
        acc[ii] = 1;
        for (const auto& [l, v] : t.row(ii)) {
            if (l == ii) continue;
            for (const auto& [c, x] : rows[l]) {
                Integer nv = acc[c] - v * x;
                if (nv == 0) {
                    acc.erase(c);
                } else {
                    acc[c] = nv;
                }
            }
        }
        rows[ii] = std::move(acc);
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [c, x] : rows[i]) out.set(i, c, x);
    }
    return out;
}

RcaTrace rca_sweep(const IntMatrix& delta) {
    check_sweep_input(delta, {});
    const std::size_t n = delta.cols();
    RcaTrace t;
    t.matrices.push_back(delta);
    std::set<std::size_t> primary_cols;
    for (std::size_t r = 1; r < n; ++r) {
        IntMatrix m = t.matrices.back();
        IntMatrix round_transform = IntMatrix::identity(n);
        // Primaries of one diagonal are cleared one at a time, so a later pivot column never carries an
        // entry in the row of an earlier one.
        for (std::size_t p = r; p < n; ++p) {
            const std::size_t i = p - r;
            const Integer v = m.at(i, p);
            if (v == 0 || primary_cols.count(p)) continue;
            primary_cols.insert(p);
            t.pivots.push_back({i + 1, p + 1, static_cast<int>(r), PivotKind::Primary, v});
            IntMatrix tr = IntMatrix::identity(n);
            bool any = false;
            for (const auto& [l, w] : m.row(i)) {
                if (l <= p) continue;
                if (w % v != 0) {
                    throw Error(ErrorKind::NonUnimodular,
                                "non-integral row coefficient at (" + std::to_string(i + 1) + "," + std::to_string(l + 1) + ")");
                }
                tr.set(p, l, -(w / v));
                any = true;
            }
            if (!any) continue;
            m = multiply(multiply(unitriangular_inverse(tr), m), tr);
            round_transform = multiply(round_transform, tr);
        }
        t.transforms.push_back(std::move(round_transform));
        t.matrices.push_back(std::move(m));
    }
    return t;
}

bool primary_pivot_equality(const SweepTrace& s, const RcaTrace& r) {
    if (s.matrices.empty() || r.matrices.empty() || !(s.matrices.front() == r.matrices.front())) return false;
    std::set<std::tuple<std::size_t, std::size_t, int>> a, b;
    for (const auto& p : s.primaries()) a.emplace(p.row, p.col, p.round);
    for (const auto& p : r.pivots) b.emplace(p.row, p.col, p.round);
    return a == b;
}

}  // namespace gsflow

#include "gsflow/sssa.hpp"

#include <map>
#include <string>

namespace gsflow {

const IntMatrix& SweepTrace::delta(int r) const {
    if (r < 1 || r > last_round()) throw Error(ErrorKind::Range, "round " + std::to_string(r) + " out of range");
    return matrices[static_cast<std::size_t>(r - 1)];
}

const IntMatrix& SweepTrace::chains(int r) const {
    if (r < 1 || r > static_cast<int>(sigma.size())) throw Error(ErrorKind::Range, "round out of range");
    return sigma[static_cast<std::size_t>(r - 1)];
}

std::vector<PivotMark> SweepTrace::primaries() const {
    std::vector<PivotMark> out;
    for (const auto& p : pivots) {
        if (p.kind == PivotKind::Primary) out.push_back(p);
    }
    return out;
}

std::optional<PivotMark> SweepTrace::primary_in_column(std::size_t col) const {
    for (const auto& p : pivots) {
        if (p.kind == PivotKind::Primary && p.col == col) return p;
    }
    return std::nullopt;
}

std::optional<PivotMark> SweepTrace::primary_in_row(std::size_t row) const {
    for (const auto& p : pivots) {
        if (p.kind == PivotKind::Primary && p.row == row) return p;
    }
    return std::nullopt;
}

void check_sweep_input(const IntMatrix& delta, const std::vector<int>& grading) {
    if (!delta.is_square()) throw Error(ErrorKind::Validation, "boundary matrix must be square");
    if (!delta.is_strictly_upper()) throw Error(ErrorKind::Validation, "boundary matrix must be strictly upper triangular");
    if (!grading.empty()) {
        if (grading.size() != delta.cols()) throw Error(ErrorKind::Validation, "grading length does not match matrix");
        for (std::size_t j = 0; j < delta.cols(); ++j) {
            for (const auto& [i, v] : delta.column(j)) {
                if (grading[j] - grading[i] != 1) {
                    throw Error(ErrorKind::Validation, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                           ") joins non-consecutive grades");
                }
            }
        }
    }
    if (!multiply(delta, delta).is_zero()) throw Error(ErrorKind::Structural, "boundary matrix does not square to zero");
}

SweepTrace sweep(const IntMatrix& delta, const std::vector<int>& grading) {
    check_sweep_input(delta, grading);
    const std::size_t n = delta.cols();
    SweepTrace t;
    t.grading = grading;
    t.matrices.push_back(delta);
    t.sigma.push_back(IntMatrix::identity(n));

    // 0-based primary positions: column -> row and row -> column.
    std::map<std::size_t, std::size_t> primary_row_of_col;
    std::map<std::size_t, std::size_t> primary_col_of_row;

    for (std::size_t r = 1; r < n; ++r) {
        const IntMatrix& m = t.matrices.back();
        struct Step {
            std::size_t t, j;
            Integer c;
        };
        std::vector<Step> steps;
        for (std::size_t j = r; j < n; ++j) {
            const std::size_t i = j - r;
            Integer v = m.at(i, j);
            if (v == 0) continue;
            auto below = primary_row_of_col.find(j);
            if (below != primary_row_of_col.end() && below->second > i) continue;
            for (const auto& [s, w] : m.column(j)) {
                if (s > i) throw Error(ErrorKind::Structural, "sweep invariant violated below a pivot candidate");
            }
            auto left = primary_col_of_row.find(i);
            if (left != primary_col_of_row.end() && left->second < j) {
                const Integer& pv = m.at(i, left->second);
                if (v % pv != 0) {
                    throw Error(ErrorKind::NonUnimodular,
                                "non-unimodular change of basis at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
                }
                steps.push_back({left->second, j, v / pv});
                t.pivots.push_back({i + 1, j + 1, static_cast<int>(r), PivotKind::ChangeOfBasis, v});
            } else {
                primary_row_of_col[j] = i;
                primary_col_of_row[i] = j;
                t.pivots.push_back({i + 1, j + 1, static_cast<int>(r), PivotKind::Primary, v});
            }
        }
        // T = I + N with N[t][j] = -c; primary columns never receive a step, so N^2 = 0 and T^-1 = I - N.
        IntMatrix tr = IntMatrix::identity(n);
        IntMatrix next = m;
        for (const auto& s : steps) {
            tr.set(s.t, s.j, -s.c);
            next = col_combine(next, s.t, s.j, -s.c);
        }
        for (const auto& s : steps) next = row_combine(next, s.j, s.t, s.c);
        t.transforms.push_back(tr);
        t.sigma.push_back(steps.empty() ? t.sigma.back() : multiply(t.sigma.back(), tr));
        t.matrices.push_back(std::move(next));
    }
    return t;
}

std::vector<PivotMark> pivots_on_diagonal(const SweepTrace& t, int r) {
    if (r < 1) throw Error(ErrorKind::Range, "diagonal index must be at least 1");
    std::vector<PivotMark> out;
    for (const auto& p : t.pivots) {
        if (p.round == r) out.push_back(p);
    }
    return out;
}

}  // namespace gsflow

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gsflow/int_matrix.hpp"

namespace gsflow {

enum class PivotKind { Primary, ChangeOfBasis };

// Positions are 1-based in the generator order; round = col - row.
struct PivotMark {
    std::size_t row = 0;
    std::size_t col = 0;
    int round = 0;
    PivotKind kind = PivotKind::Primary;
    Integer value;
};

struct SweepTrace {
    std::vector<int> grading;
    std::vector<IntMatrix> matrices;    // matrices[r-1] is the matrix at round r
    std::vector<IntMatrix> transforms;  // transforms[r-1] is the change of basis applied after round r
    std::vector<IntMatrix> sigma;       // sigma[r-1]: column j holds the chain sigma^{j,r}
    std::vector<PivotMark> pivots;

    std::size_t size() const { return matrices.empty() ? 0 : matrices.front().cols(); }
    int last_round() const { return static_cast<int>(matrices.size()); }
    const IntMatrix& delta(int r) const;
    const IntMatrix& chains(int r) const;
    std::vector<PivotMark> primaries() const;
    // Primary pivot in a 1-based column, if any.
    std::optional<PivotMark> primary_in_column(std::size_t col) const;
    std::optional<PivotMark> primary_in_row(std::size_t row) const;
};

// Checks the sweep preconditions; throws Error(Validation/Structural).
void check_sweep_input(const IntMatrix& delta, const std::vector<int>& grading);

// grading may be empty to skip the grading check.
SweepTrace sweep(const IntMatrix& delta, const std::vector<int>& grading = {});

std::vector<PivotMark> pivots_on_diagonal(const SweepTrace& t, int r);

}  // namespace gsflow

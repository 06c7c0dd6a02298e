#pragma once

#include <vector>

#include "gsflow/int_matrix.hpp"
#include "gsflow/sssa.hpp"

namespace gsflow {

struct RcaTrace {
    std::vector<IntMatrix> matrices;    // matrices[r-1] is the matrix at round r
    std::vector<IntMatrix> transforms;  // transforms[r-1] is built from the primaries of round r
    std::vector<PivotMark> pivots;      // primaries only

    int last_round() const { return static_cast<int>(matrices.size()); }
    const IntMatrix& delta(int r) const;
};

// Exact inverse of an upper unitriangular matrix by back-substitution.
IntMatrix unitriangular_inverse(const IntMatrix& t);

RcaTrace rca_sweep(const IntMatrix& delta);

bool primary_pivot_equality(const SweepTrace& s, const RcaTrace& r);

}  // namespace gsflow

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gsflow/flow_model.hpp"
#include "gsflow/int_matrix.hpp"

namespace gsflow {

struct GSComplex {
    std::vector<Generator> generators;
    IntMatrix boundary;  // column j is the boundary of generator j

    std::vector<int> grading() const;
    std::size_t count_in_grade(int k) const;
    std::vector<std::string> labels() const;
    // boundaries[k] : C_k -> C_{k-1}, in the layout expected by homology_of_complex.
    std::vector<IntMatrix> graded_boundaries() const;
};

GSComplex build_complex(const FlowSpec& f, bool canonical_order = false);

// Complex over an explicit matrix; generators are named g1, g2, ...
GSComplex complex_from_matrix(const IntMatrix& boundary, const std::vector<int>& grading);

std::vector<HomologyGroup> complex_homology(const GSComplex& c);

bool check_boundary_squared(const GSComplex& c);
bool check_grading_consecutive(const GSComplex& c);

// Every listed generator must have incidence degree 0 or 2, both on the same side.
bool check_saddle_cone_incidence(const IntMatrix& boundary, const std::vector<std::size_t>& cone_saddles);
bool check_saddle_cone_incidence(const GSComplex& c, const FlowSpec& f);

struct FiltrationLevel {
    std::size_t p = 0;
    std::string added;
    int k = 0;
};

struct FiltrationView {
    std::vector<FiltrationLevel> levels;
    long gap(std::size_t row, std::size_t col) const { return static_cast<long>(col) - static_cast<long>(row); }
};

FiltrationView finest_filtration(const GSComplex& c);

}  // namespace gsflow

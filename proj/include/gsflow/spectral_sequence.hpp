#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "gsflow/gs_complex.hpp"
#include "gsflow/sssa.hpp"

namespace gsflow {

// Integer combination of original generators (0-based index, coefficient).
using Chain = std::vector<std::pair<std::size_t, Integer>>;

struct SpanningChain {
    std::size_t column = 0;  // 1-based
    int xi = 1;
    int mu = 1;
    Chain chain;
};

struct PageModule {
    long p = 0;
    int r = 1;
    std::size_t rank = 0;
    Integer torsion = 0;  // nonzero when the module is cyclic torsion Z/torsion
    std::vector<SpanningChain> spanning_chains;
};

struct AlgebraicCancellation {
    int round = 0;
    std::size_t source = 0;  // p
    std::size_t target = 0;  // p - r
    PivotMark pivot;
};

enum class DifferentialClass { Primary, ChangeOfBasis, Zero };

struct Differential {
    Integer value;
    DifferentialClass kind = DifferentialClass::Zero;
};

Chain chain_of(const SweepTrace& t, int r, std::size_t column);

std::vector<SpanningChain> z_module(const SweepTrace& t, int r, std::size_t p, int k);
PageModule e_module(const SweepTrace& t, int r, long p);
Differential differential(const SweepTrace& t, int r, long p);
std::vector<AlgebraicCancellation> algebraic_cancellations(const SweepTrace& t);

// Generators never touched by a primary pivot, counted per grade.
std::array<std::size_t, 3> surviving_positions(const SweepTrace& t);
bool e_infinity_check(const SweepTrace& t, const GSComplex& c);

// Rank grid: grid[r-1][p] for r = 1..pages.
std::vector<std::vector<std::size_t>> page_table(const SweepTrace& t, int pages);

}  // namespace gsflow

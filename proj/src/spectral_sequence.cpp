#include "gsflow/spectral_sequence.hpp"

#include <algorithm>
#include <string>

namespace gsflow {

namespace {

int grade_of(const SweepTrace& t, std::size_t index0) {
    return t.grading.empty() ? 0 : t.grading.at(index0);
}

}  // namespace

Chain chain_of(const SweepTrace& t, int r, std::size_t column) {
    int rr = std::min(r, static_cast<int>(t.sigma.size()));
    const IntMatrix& s = t.chains(std::max(rr, 1));
    Chain out;
    for (const auto& [i, v] : s.column(column - 1)) out.emplace_back(i, v);
    return out;
}

std::vector<SpanningChain> z_module(const SweepTrace& t, int r, std::size_t p, int k) {
    const std::size_t n = t.size();
    if (r < 1) throw Error(ErrorKind::Range, "page index must be at least 1");
    if (p + 1 > n) throw Error(ErrorKind::Range, "filtration index out of range");
    if (grade_of(t, p) != k) throw Error(ErrorKind::Range, "column p+1 is not a generator of grade k");
    std::size_t first = p;
    while (first > 0 && grade_of(t, first - 1) == k) --first;
    std::vector<SpanningChain> out;
    const long floor_row = static_cast<long>(p) - r + 1;  // 1-based row p-r+1
    for (std::size_t j0 = first; j0 <= p; ++j0) {
        const std::size_t j = j0 + 1;
        int xi = std::max(1, r - static_cast<int>(p + 1 - j));
        int mu = 1;
        if (auto prim = t.primary_in_column(j); prim && static_cast<long>(prim->row) > floor_row) mu = 0;
        out.push_back({j, xi, mu, chain_of(t, xi, j)});
    }
    return out;
}

PageModule e_module(const SweepTrace& t, int r, long p) {
    PageModule m;
    m.p = p;
    m.r = r;
    if (p < 0 || static_cast<std::size_t>(p) >= t.size() || r < 1) return m;
    const std::size_t pos = static_cast<std::size_t>(p) + 1;
    for (const auto& pv : t.primaries()) {
        if (pv.round >= r) continue;
        if (pv.col == pos) return m;
        if (pv.row == pos) {
            if (pv.value != 1 && pv.value != -1) m.torsion = pv.value < 0 ? Integer(-pv.value) : pv.value;
            return m;
        }
    }
    m.rank = 1;
    m.spanning_chains.push_back({pos, r, 1, chain_of(t, r, pos)});
    return m;
}

Differential differential(const SweepTrace& t, int r, long p) {
    if (r < 1 || r > t.last_round() || p - r < 0) throw Error(ErrorKind::Range, "differential out of range");
    const std::size_t row = static_cast<std::size_t>(p - r) + 1;
    const std::size_t col = static_cast<std::size_t>(p) + 1;
    // A change-of-basis entry always induces the zero map, even where the target module already vanished.
    for (const auto& pv : t.pivots) {
        if (pv.row == row && pv.col == col && pv.round == r && pv.kind == PivotKind::ChangeOfBasis) {
            return {pv.value, DifferentialClass::ChangeOfBasis};
        }
    }
    if (e_module(t, r, p).rank == 0 || e_module(t, r, p - r).rank == 0) {
        throw Error(ErrorKind::Range, "differential undefined: a module is zero on this page");
    }
    for (const auto& pv : t.pivots) {
        if (pv.row == row && pv.col == col && pv.round == r) return {pv.value, DifferentialClass::Primary};
    }
    Integer v = t.delta(r).at(row - 1, col - 1);
    if (v != 0) throw Error(ErrorKind::Range, "differential undefined for an unmarked nonzero entry");
    return {0, DifferentialClass::Zero};
}

std::vector<AlgebraicCancellation> algebraic_cancellations(const SweepTrace& t) {
    std::vector<AlgebraicCancellation> out;
    for (const auto& pv : t.primaries()) {
        if (pv.value != 1 && pv.value != -1) continue;
        out.push_back({pv.round, pv.col - 1, pv.row - 1, pv});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.round != b.round ? a.round < b.round : a.pivot.col < b.pivot.col;
    });
    return out;
}

std::array<std::size_t, 3> surviving_positions(const SweepTrace& t) {
    std::array<std::size_t, 3> out{0, 0, 0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.primary_in_column(i + 1) || t.primary_in_row(i + 1)) continue;
        int k = grade_of(t, i);
        if (k < 0 || k > 2) throw Error(ErrorKind::Range, "grade out of range");
        ++out[static_cast<std::size_t>(k)];
    }
    return out;
}

bool e_infinity_check(const SweepTrace& t, const GSComplex& c) {
    if (c.generators.empty()) return true;
    auto h = complex_homology(c);
    auto s = surviving_positions(t);
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t betti = k < h.size() ? h[k].betti : 0;
        if (s[k] != betti) return false;
    }
    return true;
}

std::vector<std::vector<std::size_t>> page_table(const SweepTrace& t, int pages) {
    std::vector<std::vector<std::size_t>> grid;
    for (int r = 1; r <= pages; ++r) {
        std::vector<std::size_t> row;
        for (std::size_t p = 0; p < t.size(); ++p) row.push_back(e_module(t, r, static_cast<long>(p)).rank);
        grid.push_back(std::move(row));
    }
    return grid;
}

}  // namespace gsflow

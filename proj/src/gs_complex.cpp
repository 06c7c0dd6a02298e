#include "gsflow/gs_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "gsflow/morsification.hpp"

namespace gsflow {

std::vector<int> GSComplex::grading() const {
    std::vector<int> out;
    out.reserve(generators.size());
    for (const auto& g : generators) out.push_back(g.k);
    return out;
}

std::size_t GSComplex::count_in_grade(int k) const {
    return static_cast<std::size_t>(
        std::count_if(generators.begin(), generators.end(), [k](const Generator& g) { return g.k == k; }));
}

std::vector<std::string> GSComplex::labels() const {
    std::vector<std::string> out;
    for (const auto& g : generators) out.push_back(g.label);
    return out;
}

std::vector<IntMatrix> GSComplex::graded_boundaries() const {
    std::vector<std::vector<std::size_t>> by_grade(3);
    for (std::size_t i = 0; i < generators.size(); ++i) by_grade.at(generators[i].k).push_back(i);
    std::vector<IntMatrix> out;
    out.emplace_back(0, by_grade[0].size());
    for (int k = 1; k < 3; ++k) out.push_back(boundary.submatrix(by_grade[k - 1], by_grade[k]));
    return out;
}

GSComplex build_complex(const FlowSpec& input, bool canonical_order) {
    FlowSpec f = normalize_flow(input);
    if (canonical_order) f.generator_order = canonical_generator_order(f);
    GSComplex c;
    c.generators = f.generator_order;
    const std::size_t n = c.generators.size();
    c.boundary = IntMatrix(n, n);
    std::map<std::tuple<std::string, int, int>, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = c.generators[i];
        pos[{g.singularity, g.k, g.index}] = i;
    }
    for (const auto& o : f.orbits) {
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& sh : o.sheets) {
            if (sh.from.k - sh.to.k != 1) continue;
            pairs.emplace(pos.at({o.to, sh.to.k, sh.to.index}), pos.at({o.from, sh.from.k, sh.from.index}));
        }
        for (const auto& [i, j] : pairs) {
            c.boundary.add_to(i, j, orbit_contribution(o, f, c.generators[j], c.generators[i]));
        }
    }
    return c;
}

GSComplex complex_from_matrix(const IntMatrix& boundary, const std::vector<int>& grading) {
    if (!boundary.is_square() || boundary.rows() != grading.size()) {
        throw Error(ErrorKind::Range, "grading length must match the square boundary matrix");
    }
    GSComplex c;
    for (std::size_t i = 0; i < grading.size(); ++i) {
        std::string name = "g" + std::to_string(i + 1);
        c.generators.push_back({name, grading[i], 1, name});
    }
    c.boundary = boundary;
    return c;
}

std::vector<HomologyGroup> complex_homology(const GSComplex& c) { return homology_of_complex(c.graded_boundaries()); }

bool check_boundary_squared(const GSComplex& c) { return multiply(c.boundary, c.boundary).is_zero(); }

bool check_grading_consecutive(const GSComplex& c) {
    for (std::size_t j = 0; j < c.boundary.cols(); ++j) {
        for (const auto& [i, v] : c.boundary.column(j)) {
            if (c.generators[j].k - c.generators[i].k != 1) return false;
        }
    }
    return true;
}

bool check_saddle_cone_incidence(const IntMatrix& boundary, const std::vector<std::size_t>& cone_saddles) {
    for (std::size_t y : cone_saddles) {
        std::size_t incoming = boundary.row(y).size();
        std::size_t outgoing = boundary.column(y).size();
        std::size_t degree = incoming + outgoing;
        if (degree == 0) continue;
        if (degree != 2) return false;
        if (incoming != 0 && outgoing != 0) return false;
    }
    return true;
}

bool check_saddle_cone_incidence(const GSComplex& c, const FlowSpec& f) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        const Singularity* s = f.find(c.generators[i].singularity);
        if (s && is_cone_saddle(*s)) cone.push_back(i);
    }
    return check_saddle_cone_incidence(c.boundary, cone);
}

FiltrationView finest_filtration(const GSComplex& c) {
    FiltrationView v;
    int last = 0;
    for (std::size_t p = 0; p < c.generators.size(); ++p) {
        if (c.generators[p].k < last) throw Error(ErrorKind::Validation, "generator order is not grading-compatible");
        last = c.generators[p].k;
        v.levels.push_back({p, c.generators[p].label, c.generators[p].k});
    }
    return v;
}

}  // namespace gsflow

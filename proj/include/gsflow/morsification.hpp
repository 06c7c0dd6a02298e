#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gsflow/flow_model.hpp"
#include "gsflow/int_matrix.hpp"

namespace gsflow {

struct MorsePoint {
    std::string name;
    int index = 0;  // 0 attractor, 1 saddle, 2 repeller
    std::string parent;
    int k = 0;
    int gen_index = 1;
    // Extra points introduced by cone expansions have no generator of their own.
    bool auxiliary = false;
};

struct MorseOrbit {
    std::size_t from = 0;
    std::size_t to = 0;
    int sign = 0;
    std::size_t source_orbit = 0;
};

struct MorsifiedFlow {
    std::vector<MorsePoint> points;
    std::vector<MorseOrbit> orbits;
    std::vector<int> component_map;
    int component_count = 0;

    std::optional<std::size_t> primary(const std::string& singularity, int k, int index) const;
    std::optional<std::size_t> partner(std::size_t primary_point) const;
};

MorsifiedFlow morsify(const FlowSpec& f);

// Boundary matrix over all Morse points in the order of MorsifiedFlow::points.
IntMatrix morse_boundary(const MorsifiedFlow& m);

// Morse boundary restricted to primary points in generator order. Cone-saddle partners are folded into
// their primary by the sign-transfer rule.
IntMatrix morse_boundary_on_generators(const MorsifiedFlow& m, const std::vector<Generator>& order);

// Scalar for ordinary and cone/Whitney orbits, pair for double-crossing folds, triple for triple-crossing folds.
std::vector<int> transfer_sign(const OrbitSpec& o, const FlowSpec& f);

// Contribution of one (normalized) orbit to the entry n(x, y).
Integer orbit_contribution(const OrbitSpec& o, const FlowSpec& f, const Generator& x, const Generator& y);

Integer intersection_number(const FlowSpec& f, const Generator& x, const Generator& y);

}  // namespace gsflow

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gsflow {

enum class Family { Regular, Cone, Whitney, DoubleCrossing, TripleCrossing };

enum class Nature { a, r, s, s_s, s_u, a_n, r_n, sa, sr, ss_s, ss_u, ssa, ssr, composite };

using NatureNumbers = std::array<int, 3>;

struct Singularity {
    std::string id;
    Family family = Family::Regular;
    Nature nature = Nature::a;
    int sheets = 1;
    // Only meaningful for Nature::composite (points produced by merging).
    NatureNumbers composite_eta{0, 0, 0};
    int composite_type = 0;
};

// Generator h_k^index of a singularity. k == -1 or index == 0 means "infer".
struct GenRef {
    int k = -1;
    int index = 0;
    friend bool operator==(const GenRef&, const GenRef&) = default;
};

struct Sheet {
    GenRef from;
    GenRef to;
    int sign = 0;
};

struct OrbitSpec {
    std::string label;
    std::string from;
    std::string to;
    bool singular_part = false;
    bool rewired = false;
    std::vector<Sheet> sheets;
};

struct Generator {
    std::string singularity;
    int k = 0;
    int index = 1;
    std::string label;
    friend bool operator==(const Generator& a, const Generator& b) {
        return a.singularity == b.singularity && a.k == b.k && a.index == b.index;
    }
};

struct FlowSpec {
    std::string name;
    bool surface_orientable = true;
    std::vector<Singularity> singularities;
    std::vector<OrbitSpec> orbits;
    std::vector<Generator> generator_order;

    const Singularity* find(const std::string& id) const;
};

struct Diagnostic {
    std::string code;
    std::string message;
};

struct BlockData {
    std::array<long, 3> conley_ranks{0, 0, 0};
    std::array<long, 3> conley_ranks_dual{0, 0, 0};
    std::vector<long> entering;
    std::vector<long> exiting;
};

std::string family_name(Family f);
Family parse_family(const std::string& s);
std::string nature_name(Nature n);
Nature parse_nature(const std::string& s);

bool is_saddle_nature(Nature n);
bool is_attracting_nature(Nature n);
bool is_repelling_nature(Nature n);
bool is_cone_saddle(const Singularity& s);

// Throws Error(Validation) when family and nature are incompatible.
NatureNumbers nature_numbers(const Singularity& s);
int type_number(const Singularity& s);
std::vector<Diagnostic> check_singularity(const Singularity& s);

bool poincare_hopf_check(const BlockData& b);

std::string generator_label(const Singularity& s, int k, int index);

// Generator order: grade 0, then 1, then 2; singularities in input order.
std::vector<Generator> default_generator_order(const FlowSpec& f);
// Grade, then singularity id, then generator index.
std::vector<Generator> canonical_generator_order(const FlowSpec& f);

std::vector<Diagnostic> validate_flow(const FlowSpec& f);

// Returns a copy with inferred sheet attributions, a complete generator order and labels filled in.
// Throws Error(Validation) carrying the first diagnostic when the flow is invalid.
FlowSpec normalize_flow(const FlowSpec& f);

std::vector<Generator> enumerate_generators(const FlowSpec& f);

}  // namespace gsflow

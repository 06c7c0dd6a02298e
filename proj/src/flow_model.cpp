#include "gsflow/flow_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "gsflow/error.hpp"

namespace gsflow {

const Singularity* FlowSpec::find(const std::string& id) const {
    for (const auto& s : singularities) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

namespace {

const std::pair<Family, const char*> kFamilyNames[] = {
    {Family::Regular, "regular"},
    {Family::Cone, "cone"},
    {Family::Whitney, "whitney"},
    {Family::DoubleCrossing, "double_crossing"},
    {Family::TripleCrossing, "triple_crossing"},
};

const std::pair<Nature, const char*> kNatureNames[] = {
    {Nature::a, "a"},       {Nature::r, "r"},       {Nature::s, "s"},       {Nature::s_s, "s_s"},
    {Nature::s_u, "s_u"},   {Nature::a_n, "a^n"},   {Nature::r_n, "r^n"},   {Nature::sa, "sa"},
    {Nature::sr, "sr"},     {Nature::ss_s, "ss_s"}, {Nature::ss_u, "ss_u"}, {Nature::ssa, "ssa"},
    {Nature::ssr, "ssr"},   {Nature::composite, "composite"},
};

bool allowed(Family f, Nature n) {
    if (n == Nature::composite) return f != Family::Regular;
    switch (f) {
        case Family::Regular:
        case Family::Cone:
            return n == Nature::a || n == Nature::r || n == Nature::s;
        case Family::Whitney:
            return n == Nature::a || n == Nature::r || n == Nature::s_s || n == Nature::s_u;
        case Family::DoubleCrossing:
            return n == Nature::a_n || n == Nature::r_n || n == Nature::sa || n == Nature::sr || n == Nature::ss_s ||
                   n == Nature::ss_u;
        case Family::TripleCrossing:
            return n == Nature::a_n || n == Nature::r_n || n == Nature::ssa || n == Nature::ssr;
    }
    return false;
}

int eta_total(const NatureNumbers& e) { return e[0] + e[1] + e[2]; }

}  // namespace

std::string family_name(Family f) {
    for (const auto& [v, name] : kFamilyNames) {
        if (v == f) return name;
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (const auto& [v, name] : kFamilyNames) {
        if (s == name) return v;
    }
    throw Error(ErrorKind::Validation, "unknown singularity family '" + s + "'");
}

std::string nature_name(Nature n) {
    for (const auto& [v, name] : kNatureNames) {
        if (v == n) return name;
    }
    return "?";
}

Nature parse_nature(const std::string& s) {
    for (const auto& [v, name] : kNatureNames) {
        if (s == name) return v;
    }
    // Accept explicit sheet counts such as "a^3".
    if (s.size() > 2 && (s[0] == 'a' || s[0] == 'r') && s[1] == '^' &&
        std::all_of(s.begin() + 2, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return s[0] == 'a' ? Nature::a_n : Nature::r_n;
    }
    throw Error(ErrorKind::Validation, "unknown nature '" + s + "'");
}

bool is_saddle_nature(Nature n) {
    switch (n) {
        case Nature::s:
        case Nature::s_s:
        case Nature::s_u:
        case Nature::sa:
        case Nature::sr:
        case Nature::ss_s:
        case Nature::ss_u:
        case Nature::ssa:
        case Nature::ssr:
            return true;
        default:
            return false;
    }
}

bool is_attracting_nature(Nature n) { return n == Nature::a || n == Nature::a_n; }
bool is_repelling_nature(Nature n) { return n == Nature::r || n == Nature::r_n; }

bool is_cone_saddle(const Singularity& s) { return s.family == Family::Cone && s.nature == Nature::s; }

std::vector<Diagnostic> check_singularity(const Singularity& s) {
    std::vector<Diagnostic> out;
    auto bad = [&](const std::string& msg) { out.push_back({"bad-singularity", s.id + ": " + msg}); };
    if (!allowed(s.family, s.nature)) {
        bad("nature " + nature_name(s.nature) + " is incompatible with family " + family_name(s.family));
        return out;
    }
    if (s.sheets < 1) {
        bad("sheet count must be at least 1");
        return out;
    }
    if (s.nature == Nature::composite) {
        if (eta_total(s.composite_eta) < 1 || *std::min_element(s.composite_eta.begin(), s.composite_eta.end()) < 0) {
            bad("composite nature needs nonnegative nature numbers with positive sum");
        }
        if (s.composite_type < 0) bad("composite type number must be nonnegative");
        return out;
    }
    if (s.family == Family::Regular || is_saddle_nature(s.nature)) {
        if (s.sheets != 1) bad("regular and saddle-natured points carry exactly one sheet");
        return out;
    }
    switch (s.family) {
        case Family::Cone:
        case Family::DoubleCrossing:
            if (s.sheets < 2) bad("needs at least 2 sheets");
            break;
        case Family::TripleCrossing:
            if (s.sheets < 3 || s.sheets % 2 == 0) bad("triple crossing needs an odd sheet count of at least 3");
            break;
        default:
            break;
    }
    return out;
}

NatureNumbers nature_numbers(const Singularity& s) {
    auto diags = check_singularity(s);
    if (!diags.empty()) throw Error(ErrorKind::Validation, diags.front().message);
    switch (s.nature) {
        case Nature::a: return {1, 0, 0};
        case Nature::r: return {0, 0, 1};
        case Nature::s:
        case Nature::s_s:
        case Nature::s_u: return {0, 1, 0};
        case Nature::a_n: return {s.sheets, 0, 0};
        case Nature::r_n: return {0, 0, s.sheets};
        case Nature::sa: return {1, 1, 0};
        case Nature::sr: return {0, 1, 1};
        case Nature::ss_s:
        case Nature::ss_u: return {0, 2, 0};
        case Nature::ssa: return {1, 2, 0};
        case Nature::ssr: return {0, 2, 1};
        case Nature::composite: return s.composite_eta;
    }
    return {0, 0, 0};
}

int type_number(const Singularity& s) {
    if (s.nature == Nature::composite) return s.composite_type;
    if (s.family == Family::Regular) return 0;
    if (is_saddle_nature(s.nature)) return 1;
    switch (s.family) {
        case Family::Cone:
        case Family::DoubleCrossing: return s.sheets - 1;
        case Family::Whitney: return s.sheets;
        case Family::TripleCrossing: return (s.sheets - 1) / 2;
        default: return 0;
    }
}

bool poincare_hopf_check(const BlockData& b) {
    auto alt = [](const std::array<long, 3>& h) { return h[2] - h[1] + h[0]; };
    long lhs = alt(b.conley_ranks) - alt(b.conley_ranks_dual);
    long e_in = static_cast<long>(b.entering.size());
    long e_out = static_cast<long>(b.exiting.size());
    long b_in = std::accumulate(b.entering.begin(), b.entering.end(), 0L);
    long b_out = std::accumulate(b.exiting.begin(), b.exiting.end(), 0L);
    return lhs == e_in - b_in - e_out + b_out;
}

std::string generator_label(const Singularity& s, int k, int index) {
    NatureNumbers eta = nature_numbers(s);
    if (k < 0 || k > 2 || index < 1 || index > eta[k]) {
        throw Error(ErrorKind::Range, "no generator h_" + std::to_string(k) + "^" + std::to_string(index) + " on " + s.id);
    }
    if (eta_total(eta) == 1) return s.id;
    int grades = 0;
    for (int g : eta) grades += g > 0 ? 1 : 0;
    std::string suffix;
    if (grades == 1 && s.family == Family::DoubleCrossing) {
        if (index == 1) {
            suffix = "e";
        } else {
            suffix = eta[k] == 2 ? "i" : "i" + std::to_string(index - 1);
        }
    } else if (grades == 1 && s.family == Family::TripleCrossing && eta[k] % 2 == 1) {
        int half = (eta[k] - 1) / 2;
        if (index == 1) {
            suffix = "e";
        } else if (index <= 1 + half) {
            suffix = half == 1 ? "m" : "m" + std::to_string(index - 1);
        } else {
            suffix = half == 1 ? "i" : "i" + std::to_string(index - 1 - half);
        }
    } else {
        int position = index;
        for (int g = 0; g < k; ++g) position += eta[g];
        suffix = std::to_string(position);
    }
    return s.id + "^" + suffix;
}

std::vector<Generator> default_generator_order(const FlowSpec& f) {
    std::vector<Generator> out;
    for (int k = 0; k < 3; ++k) {
        for (const auto& s : f.singularities) {
            NatureNumbers eta = nature_numbers(s);
            for (int i = 1; i <= eta[k]; ++i) out.push_back({s.id, k, i, generator_label(s, k, i)});
        }
    }
    return out;
}

std::vector<Generator> canonical_generator_order(const FlowSpec& f) {
    std::vector<Generator> out = default_generator_order(f);
    if (!f.generator_order.empty()) {
        // Keep any labels carried by the flow.
        for (auto& g : out) {
            auto it = std::find(f.generator_order.begin(), f.generator_order.end(), g);
            if (it != f.generator_order.end() && !it->label.empty()) g.label = it->label;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.singularity != b.singularity) return a.singularity < b.singularity;
        return a.index < b.index;
    });
    return out;
}

namespace {

struct Analysis {
    std::vector<Diagnostic> diags;
    std::vector<OrbitSpec> resolved;  // orbits with every sheet attributed
};

std::string orbit_context(std::size_t i, const OrbitSpec& o) {
    std::string name = o.label.empty() ? "#" + std::to_string(i + 1) : o.label;
    return "orbit " + name + " (" + o.from + "->" + o.to + ")";
}

int expected_arity(const OrbitSpec& o, const Singularity& x, const Singularity& y, std::string& problem) {
    if (o.rewired) return 1;
    if (is_cone_saddle(x) || is_cone_saddle(y)) {
        if (!o.singular_part) problem = "orbits through a cone saddle are duplicated and must be marked singular_part";
        return 2;
    }
    if (!o.singular_part) return 1;
    if (x.family != y.family || x.family == Family::Regular || x.family == Family::Cone) {
        problem = "singular-part orbit must join two Whitney, double-crossing or triple-crossing points";
        return 0;
    }
    return x.family == Family::TripleCrossing ? 3 : 2;
}

// Resolves grade and index of one end of a sheet. Returns an empty string on success.
std::string resolve_index(GenRef& ref, const Singularity& s, const NatureNumbers& eta) {
    if (ref.k < 0 || ref.k > 2 || eta[ref.k] == 0) {
        return s.id + " has no generator of grade " + std::to_string(ref.k);
    }
    if (ref.index == 0) {
        if (eta[ref.k] != 1) {
            return "explicit generator attribution needed on " + s.id + " (grade " + std::to_string(ref.k) + " has " +
                   std::to_string(eta[ref.k]) + " generators)";
        }
        ref.index = 1;
    }
    if (ref.index < 1 || ref.index > eta[ref.k]) {
        return "generator index " + std::to_string(ref.index) + " out of range on " + s.id;
    }
    return {};
}

Analysis analyze(const FlowSpec& f) {
    Analysis a;
    auto add = [&](const std::string& code, const std::string& msg) { a.diags.push_back({code, msg}); };

    std::map<std::string, const Singularity*> by_id;
    std::map<std::string, NatureNumbers> etas;
    for (const auto& s : f.singularities) {
        if (s.id.empty()) add("empty-id", "singularity with empty id");
        if (!by_id.emplace(s.id, &s).second) {
            add("duplicate-id", "duplicate singularity id '" + s.id + "'");
            continue;
        }
        auto sd = check_singularity(s);
        a.diags.insert(a.diags.end(), sd.begin(), sd.end());
        if (sd.empty()) etas[s.id] = nature_numbers(s);
    }

    for (std::size_t i = 0; i < f.orbits.size(); ++i) {
        OrbitSpec o = f.orbits[i];
        const std::string ctx = orbit_context(i, o);
        auto xi = etas.find(o.from);
        auto yi = etas.find(o.to);
        if (!by_id.count(o.from) || !by_id.count(o.to)) {
            add("unknown-singularity", ctx + ": unknown endpoint");
            continue;
        }
        if (xi == etas.end() || yi == etas.end()) continue;
        if (o.from == o.to) {
            add("non-consecutive-natures", ctx + ": orbit joins a singularity to itself");
            continue;
        }
        const Singularity& x = *by_id[o.from];
        const Singularity& y = *by_id[o.to];
        const NatureNumbers& ex = xi->second;
        const NatureNumbers& ey = yi->second;

        std::string problem;
        int arity = expected_arity(o, x, y, problem);
        if (!problem.empty()) {
            add("arity", ctx + ": " + problem);
            continue;
        }
        if (static_cast<int>(o.sheets.size()) != arity) {
            add("arity", ctx + ": expected " + std::to_string(arity) + " sheet sign(s), got " +
                             std::to_string(o.sheets.size()));
            continue;
        }

        bool ok = true;
        bool any_consecutive = false;
        for (auto& sh : o.sheets) {
            if (!o.rewired && (sh.sign < -1 || sh.sign > 1)) {
                add("sign", ctx + ": sheet sign must be -1, 0 or +1");
                ok = false;
                break;
            }
            if (sh.from.k < 0) {
                std::vector<int> candidates;
                for (int k = 1; k <= 2; ++k) {
                    if (ex[k] > 0 && ey[k - 1] > 0 && (sh.to.k < 0 || sh.to.k == k - 1)) candidates.push_back(k);
                }
                if (candidates.empty()) {
                    add("non-consecutive-natures", ctx + ": no grade k with generators on " + o.from +
                                                       " in grade k and on " + o.to + " in grade k-1");
                    ok = false;
                    break;
                }
                if (candidates.size() > 1) {
                    add("attribution", ctx + ": grade is ambiguous, give explicit sheet attribution");
                    ok = false;
                    break;
                }
                sh.from.k = candidates.front();
            }
            if (sh.to.k < 0) sh.to.k = sh.from.k - 1;
            std::string err = resolve_index(sh.from, x, ex);
            if (err.empty()) err = resolve_index(sh.to, y, ey);
            if (!err.empty()) {
                add("attribution", ctx + ": " + err);
                ok = false;
                break;
            }
            bool consecutive = sh.from.k - sh.to.k == 1;
            if (consecutive) {
                any_consecutive = true;
            } else {
                bool fold = o.singular_part && (x.family == Family::DoubleCrossing || x.family == Family::TripleCrossing);
                if (!fold || sh.sign != 0) {
                    add("non-consecutive-natures", ctx + ": sheet joins grades " + std::to_string(sh.from.k) + " and " +
                                                       std::to_string(sh.to.k));
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        if (!any_consecutive) {
            add("non-consecutive-natures", ctx + ": no sheet joins consecutive grades");
            continue;
        }
        if (arity == 2 && (is_cone_saddle(x) || is_cone_saddle(y))) {
            if (!(o.sheets[0].from == o.sheets[1].from && o.sheets[0].to == o.sheets[1].to)) {
                add("attribution", ctx + ": both cone sheets must join the same generator pair");
                continue;
            }
        } else if (o.singular_part && x.family == Family::Whitney) {
            if (o.sheets[0].sign + o.sheets[1].sign != 0) {
                add("sign", ctx + ": the two sheets of a Whitney singular orbit carry opposite signs");
                continue;
            }
        }
        a.resolved.push_back(o);
    }

    if (!f.generator_order.empty()) {
        std::set<std::tuple<std::string, int, int>> seen;
        int last_k = 0;
        std::size_t expected = 0;
        for (const auto& [id, eta] : etas) expected += static_cast<std::size_t>(eta_total(eta));
        for (const auto& g : f.generator_order) {
            auto it = etas.find(g.singularity);
            std::string name = g.singularity + " h_" + std::to_string(g.k) + "^" + std::to_string(g.index);
            if (it == etas.end() || g.k < 0 || g.k > 2 || g.index < 1 || g.index > it->second[g.k]) {
                add("order", "generator_order entry " + name + " does not name a generator");
                continue;
            }
            if (!seen.emplace(g.singularity, g.k, g.index).second) {
                add("order", "generator_order lists " + name + " twice");
            }
            if (g.k < last_k) add("order", "generator_order is not grading-compatible at " + name);
            last_k = std::max(last_k, g.k);
        }
        if (seen.size() != expected) add("order", "generator_order does not cover every generator");
    }
    return a;
}

}  // namespace

std::vector<Diagnostic> validate_flow(const FlowSpec& f) { return analyze(f).diags; }

FlowSpec normalize_flow(const FlowSpec& f) {
    Analysis a = analyze(f);
    if (!a.diags.empty()) throw Error(ErrorKind::Validation, a.diags.front().message);
    FlowSpec out = f;
    out.orbits = a.resolved;
    if (out.generator_order.empty()) {
        out.generator_order = default_generator_order(f);
    } else {
        for (auto& g : out.generator_order) {
            if (g.label.empty()) g.label = generator_label(*f.find(g.singularity), g.k, g.index);
        }
    }
    return out;
}

std::vector<Generator> enumerate_generators(const FlowSpec& f) { return normalize_flow(f).generator_order; }

}  // namespace gsflow

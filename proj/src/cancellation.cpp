#include "gsflow/cancellation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "gsflow/morsification.hpp"

namespace gsflow {

std::string pair_column_label(const CancellationStep& s) {
    return s.kind == CancellationKind::SaddleSink ? s.saddle : s.partner;
}

std::string pair_row_label(const CancellationStep& s) {
    return s.kind == CancellationKind::SaddleSink ? s.partner : s.saddle;
}

namespace {

int family_rank(Family f) {
    switch (f) {
        case Family::Regular: return 0;
        case Family::Whitney: return 1;
        case Family::Cone: return 2;
        case Family::DoubleCrossing: return 3;
        case Family::TripleCrossing: return 4;
    }
    return 0;
}

Singularity infer_merged(const std::string& id, Family family, const NatureNumbers& eta, int m) {
    Singularity base;
    base.id = id;
    base.family = family;
    std::vector<std::pair<Nature, int>> candidates;
    switch (family) {
        case Family::Regular:
            candidates = {{Nature::a, 1}, {Nature::r, 1}, {Nature::s, 1}};
            break;
        case Family::Cone:
            candidates = {{Nature::a, m + 1}, {Nature::r, m + 1}, {Nature::s, 1}};
            break;
        case Family::Whitney:
            // Stable and unstable Whitney saddles cannot be told apart from generator counts.
            candidates = {{Nature::a, m}, {Nature::r, m}};
            break;
        case Family::DoubleCrossing:
            candidates = {{Nature::a_n, eta[0]}, {Nature::r_n, eta[2]}, {Nature::sa, 1}, {Nature::sr, 1}};
            break;
        case Family::TripleCrossing:
            candidates = {{Nature::a_n, eta[0]}, {Nature::r_n, eta[2]}, {Nature::ssa, 1}, {Nature::ssr, 1}};
            break;
    }
    for (const auto& [nature, sheets] : candidates) {
        Singularity s = base;
        s.nature = nature;
        s.sheets = sheets;
        if (!check_singularity(s).empty()) continue;
        if (nature_numbers(s) != eta || type_number(s) != m) continue;
        return s;
    }
    Singularity s = base;
    if (family == Family::Regular) s.family = Family::Cone;
    s.nature = Nature::composite;
    s.composite_eta = eta;
    s.composite_type = m;
    if (eta[1] > 0) {
        s.sheets = 1;
    } else {
        switch (s.family) {
            case Family::Whitney: s.sheets = m; break;
            case Family::TripleCrossing: s.sheets = 2 * m + 1; break;
            default: s.sheets = m + 1; break;
        }
    }
    s.sheets = std::max(1, s.sheets);
    return s;
}

int to_int(const Integer& v) {
    if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min()) {
        throw Error(ErrorKind::Range, "coefficient does not fit an orbit sign");
    }
    return static_cast<int>(v);
}

std::optional<std::size_t> find_label(const GSComplex& c, const std::string& label) {
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        if (c.generators[i].label == label) return i;
    }
    return std::nullopt;
}

struct PairGeometry {
    CancellationKind kind;
    std::size_t a;  // row of the pivot
    std::size_t b;  // column of the pivot
    std::size_t saddle;
};

PairGeometry classify(const GSComplex& c, std::size_t saddle, std::size_t partner) {
    const auto& gs = c.generators[saddle];
    const auto& gp = c.generators[partner];
    if (gs.k != 1) throw Error(ErrorKind::Validation, "generator " + gs.label + " is not a saddle generator");
    if (gp.k == 0) return {CancellationKind::SaddleSink, partner, saddle, saddle};
    if (gp.k == 2) return {CancellationKind::SourceSaddle, saddle, partner, saddle};
    throw Error(ErrorKind::Validation, "generators " + gs.label + " and " + gp.label + " are not consecutive");
}

std::optional<std::size_t> find_witness(const GSComplex& c, const MorsifiedFlow& mf, const PairGeometry& g) {
    std::vector<std::size_t> candidates;
    if (g.kind == CancellationKind::SaddleSink) {
        for (const auto& [i, v] : c.boundary.column(g.b)) {
            if (i != g.a) candidates.push_back(i);
        }
    } else {
        for (const auto& [l, v] : c.boundary.row(g.a)) {
            if (l != g.b) candidates.push_back(l);
        }
    }
    const auto& gs = c.generators[g.saddle];
    auto sp = mf.primary(gs.singularity, gs.k, gs.index);
    if (!sp) throw Error(ErrorKind::Structural, "missing Morse point for " + gs.label);
    for (std::size_t w : candidates) {
        const auto& gw = c.generators[w];
        auto wp = mf.primary(gw.singularity, gw.k, gw.index);
        if (wp && mf.component_map[*wp] == mf.component_map[*sp]) return w;
    }
    return std::nullopt;
}

}  // namespace

CancelResult cancel_pair(const FlowSpec& input, const std::string& saddle_label, const std::string& partner_label) {
    const FlowSpec cur = normalize_flow(input);
    const GSComplex c = build_complex(cur);
    auto si = find_label(c, saddle_label);
    auto pi = find_label(c, partner_label);
    if (!si || !pi) throw Error(ErrorKind::Validation, "unknown generator in pair (" + saddle_label + ", " + partner_label + ")");
    const PairGeometry g = classify(c, *si, *pi);
    const Integer v = c.boundary.at(g.a, g.b);
    if (v != 1 && v != -1) {
        throw Error(ErrorKind::NonUnimodular, "intersection number of (" + saddle_label + ", " + partner_label + ") is not +-1");
    }
    const MorsifiedFlow mf = morsify(cur);
    auto w = find_witness(c, mf, g);
    if (!w) throw Error(ErrorKind::Structural, "no witness for the pair (" + saddle_label + ", " + partner_label + ")");

    CancellationStep step;
    step.kind = g.kind;
    step.saddle = saddle_label;
    step.partner = partner_label;
    step.witness = c.generators[*w].label;
    step.removed = {c.generators[g.a].label, c.generators[g.b].label};

    std::vector<std::string> owners = {c.generators[*si].singularity, c.generators[*pi].singularity,
                                       c.generators[*w].singularity};
    std::set<std::string> participant_ids;
    int m = 0;
    int rank = 0;
    Family family = Family::Regular;
    for (const auto& id : owners) {
        if (!participant_ids.insert(id).second) continue;
        const Singularity& s = *cur.find(id);
        step.participants.push_back({id, type_number(s)});
        m += type_number(s);
        if (family_rank(s.family) >= rank) {
            rank = family_rank(s.family);
            family = s.family;
        }
    }

    NatureNumbers eta{0, 0, 0};
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        if (i == g.a || i == g.b) continue;
        if (participant_ids.count(c.generators[i].singularity)) ++eta[static_cast<std::size_t>(c.generators[i].k)];
    }

    std::string merged_id = c.generators[*w].singularity + "*";
    auto taken = [&](const std::string& id) { return cur.find(id) && !participant_ids.count(id); };
    while (taken(merged_id)) merged_id += "*";
    step.merged = infer_merged(merged_id, family, eta, m);
    step.merged_type_number = m;

    // Gaussian elimination of the pivot; v is a unit so 1/v = v.
    const std::size_t n = c.generators.size();
    IntMatrix full = c.boundary;
    const auto pivot_col = c.boundary.column(g.b);
    const auto pivot_row = c.boundary.row(g.a);
    for (const auto& [i, x] : pivot_col) {
        for (const auto& [l, y] : pivot_row) full.add_to(i, l, -x * y * v);
    }
    if (g.kind == CancellationKind::SaddleSink) {
        for (const auto& [i, x] : pivot_col) {
            if (i != g.a) step.operations.push_back({c.generators[i].label, c.generators[g.a].label, -x * v});
        }
    } else {
        for (const auto& [l, y] : pivot_row) {
            if (l != g.b) step.operations.push_back({c.generators[l].label, c.generators[g.b].label, -y * v});
        }
    }

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != g.a && i != g.b) keep.push_back(i);
    }
    IntMatrix next = full.submatrix(keep, keep);

    FlowSpec out;
    out.name = cur.name;
    out.surface_orientable = cur.surface_orientable;
    bool placed = false;
    for (const auto& s : cur.singularities) {
        if (!participant_ids.count(s.id)) {
            out.singularities.push_back(s);
        } else if (!placed) {
            out.singularities.push_back(step.merged);
            placed = true;
        }
    }
    std::array<int, 3> next_index{0, 0, 0};
    std::vector<bool> merged_gen;
    for (std::size_t i : keep) {
        Generator gen = c.generators[i];
        bool in_merged = participant_ids.count(gen.singularity) > 0;
        if (in_merged) {
            gen.singularity = merged_id;
            gen.index = ++next_index[static_cast<std::size_t>(gen.k)];
        }
        merged_gen.push_back(in_merged);
        out.generator_order.push_back(gen);
    }
    for (const auto& o : cur.orbits) {
        if (!participant_ids.count(o.from) && !participant_ids.count(o.to)) out.orbits.push_back(o);
    }
    auto rewired = [&](std::size_t i, std::size_t l, const Integer& value) {
        const Generator& gi = out.generator_order[i];
        const Generator& gl = out.generator_order[l];
        OrbitSpec o;
        o.from = gl.singularity;
        o.to = gi.singularity;
        o.rewired = true;
        o.sheets.push_back({{gl.k, gl.index}, {gi.k, gi.index}, to_int(value)});
        return o;
    };
    for (std::size_t l = 0; l < next.cols(); ++l) {
        for (const auto& [i, value] : next.column(l)) {
            if (merged_gen[i] || merged_gen[l]) out.orbits.push_back(rewired(i, l, value));
        }
    }
    IntMatrix provisional = build_complex(out).boundary;
    for (std::size_t l = 0; l < next.cols(); ++l) {
        for (std::size_t i = 0; i < next.rows(); ++i) {
            Integer diff = next.at(i, l) - provisional.at(i, l);
            if (diff != 0) out.orbits.push_back(rewired(i, l, diff));
        }
    }
    out = normalize_flow(out);
    IntMatrix rebuilt = build_complex(out).boundary;
    if (!(rebuilt == next)) {
        throw Error(ErrorKind::Structural, "rewired flow does not reproduce the eliminated boundary matrix");
    }
    return {out, step, next};
}

std::vector<CancellationStep> FlowFamily::schedule() const {
    std::vector<CancellationStep> out;
    for (const auto& st : stages) out.insert(out.end(), st.steps.begin(), st.steps.end());
    return out;
}

FlowFamily flow_family(const FlowSpec& f, int max_round) {
    FlowFamily fam;
    FlowSpec cur = normalize_flow(f);
    const GSComplex c0 = build_complex(cur);
    fam.sweep = sweep(c0.boundary, c0.grading());
    fam.rca = rca_sweep(c0.boundary);
    if (!primary_pivot_equality(fam.sweep, fam.rca)) {
        throw Error(ErrorKind::Structural, "primary pivots of the two sweeps differ");
    }
    fam.stages.push_back({0, cur, {}});
    const std::size_t n = c0.generators.size();
    std::set<std::size_t> removed;
    for (int r = 1; r < static_cast<int>(n); ++r) {
        if (max_round > 0 && r > max_round) break;
        std::vector<PivotMark> prims;
        for (const auto& p : fam.rca.pivots) {
            if (p.round == r) prims.push_back(p);
        }
        if (prims.empty()) continue;
        std::sort(prims.begin(), prims.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
        FamilyStage stage;
        stage.round = r;
        for (const auto& p : prims) {
            if (p.value != 1 && p.value != -1) {
                throw Error(ErrorKind::NonUnimodular, "primary pivot (" + std::to_string(p.row) + "," +
                                                          std::to_string(p.col) + ") is not +-1");
            }
            const Generator& upper = c0.generators[p.col - 1];
            const Generator& lower = c0.generators[p.row - 1];
            const bool saddle_upper = upper.k == 1;
            CancelResult res = cancel_pair(cur, saddle_upper ? upper.label : lower.label,
                                           saddle_upper ? lower.label : upper.label);
            res.step.round = r;
            res.step.pivot_row = p.row;
            res.step.pivot_col = p.col;
            stage.steps.push_back(res.step);
            cur = res.flow;
            removed.insert(p.row - 1);
            removed.insert(p.col - 1);
        }
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i) {
            if (!removed.count(i)) keep.push_back(i);
        }
        const GSComplex now = build_complex(cur);
        bool same_labels = now.generators.size() == keep.size();
        for (std::size_t i = 0; same_labels && i < keep.size(); ++i) {
            same_labels = now.generators[i].label == c0.generators[keep[i]].label;
        }
        if (!same_labels || !(now.boundary == fam.rca.delta(r + 1).submatrix(keep, keep))) {
            throw Error(ErrorKind::Structural,
                        "cancelled flow disagrees with the row cancellation matrix after round " + std::to_string(r));
        }
        stage.flow = cur;
        fam.stages.push_back(std::move(stage));
    }
    return fam;
}

bool is_minimal(const FlowSpec& input) {
    const FlowSpec f = normalize_flow(input);
    const GSComplex c = build_complex(f);
    const MorsifiedFlow mf = morsify(f);
    for (std::size_t b = 0; b < c.boundary.cols(); ++b) {
        for (const auto& [a, v] : c.boundary.column(b)) {
            if (v != 1 && v != -1) continue;
            const std::size_t saddle = c.generators[b].k == 1 ? b : a;
            const std::size_t partner = saddle == b ? a : b;
            if (find_witness(c, mf, classify(c, saddle, partner))) return false;
        }
    }
    return true;
}

ConsonanceReport consonance_report(const std::vector<AlgebraicCancellation>& algebraic,
                                   const std::vector<CancellationStep>& schedule) {
    std::map<std::tuple<int, std::size_t, std::size_t>, ConsonanceRow> rows;
    for (const auto& a : algebraic) {
        auto& row = rows[{a.round, a.pivot.row, a.pivot.col}];
        row.round = a.round;
        row.row = a.pivot.row;
        row.col = a.pivot.col;
        row.algebraic = true;
    }
    for (const auto& s : schedule) {
        auto& row = rows[{s.round, s.pivot_row, s.pivot_col}];
        row.round = s.round;
        row.row = s.pivot_row;
        row.col = s.pivot_col;
        row.dynamical = true;
        row.pair = "(" + pair_column_label(s) + ", " + pair_row_label(s) + ")";
    }
    ConsonanceReport out;
    for (auto& [key, row] : rows) {
        out.bijective = out.bijective && row.algebraic && row.dynamical;
        out.rows.push_back(row);
    }
    return out;
}

ConsonanceReport consonance_report(const FlowSpec& f) {
    FlowFamily fam = flow_family(f);
    return consonance_report(algebraic_cancellations(fam.sweep), fam.schedule());
}

}  // namespace gsflow

#include "gsflow/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gsflow {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation:
        case ErrorKind::Range: return kExitValidation;
        case ErrorKind::Structural:
        case ErrorKind::NonUnimodular: return kExitStructural;
        case ErrorKind::Io: return kExitIo;
    }
    return kExitStructural;
}

FlowSpec prepare_flow(const FlowSpec& f, bool canonical_order) {
    FlowSpec out = normalize_flow(f);
    if (canonical_order) out.generator_order = canonical_generator_order(out);
    return out;
}

namespace {

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

std::string describe(const Singularity& s) {
    std::ostringstream os;
    os << s.id << " " << family_name(s.family) << " " << nature_name(s.nature) << " sheets=" << s.sheets;
    if (s.nature == Nature::composite) {
        os << " eta=(" << s.composite_eta[0] << "," << s.composite_eta[1] << "," << s.composite_eta[2] << ")";
    }
    os << " m=" << type_number(s);
    return os.str();
}

std::string pivot_label(const PivotMark& p, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "(" << p.row << "," << p.col << ")";
    if (p.col <= labels.size()) os << " " << labels[p.col - 1] << "->" << labels[p.row - 1];
    return os.str();
}

std::vector<PivotMark> marks_for_round(const std::vector<PivotMark>& all, int r) {
    std::vector<PivotMark> out;
    for (const auto& p : all) {
        if (p.round == r) out.push_back(p);
    }
    return out;
}

}  // namespace

std::string render_validation(const FlowSpec& f, const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    os << "== validation ==\n";
    os << "flow: " << (f.name.empty() ? "(unnamed)" : f.name) << "\n";
    os << "orientable: " << (f.surface_orientable ? "yes" : "no") << "\n";
    if (diags.empty()) {
        for (const auto& s : f.singularities) os << "  " << describe(s) << "\n";
        os << "status: valid\n";
    } else {
        for (const auto& d : diags) os << "  [" << d.code << "] " << d.message << "\n";
        os << "status: invalid (" << diags.size() << " diagnostic" << (diags.size() == 1 ? "" : "s") << ")\n";
    }
    return os.str();
}

std::string render_morsification(const MorsifiedFlow& m) {
    std::ostringstream os;
    os << "== morsification ==\n";
    os << "points: " << m.points.size() << "  components: " << m.component_count << "\n";
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        const auto& p = m.points[i];
        os << "  " << p.name << " index=" << p.index << " parent=" << p.parent << " component=" << m.component_map[i]
           << (p.auxiliary ? " auxiliary" : "") << "\n";
    }
    os << "orbits: " << m.orbits.size() << "\n";
    for (const auto& o : m.orbits) {
        os << "  " << m.points[o.from].name << " -> " << m.points[o.to].name << " sign=" << o.sign << "\n";
    }
    return os.str();
}

std::string render_boundary(const GSComplex& c) {
    std::ostringstream os;
    os << "== boundary matrix ==\n";
    std::size_t w = 3;
    for (const auto& g : c.generators) w = std::max(w, g.label.size() + 1);
    os << pad("", w);
    for (const auto& g : c.generators) os << pad(g.label, w);
    os << "\n";
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        os << pad(c.generators[i].label, w);
        for (std::size_t j = 0; j < c.generators.size(); ++j) os << pad(to_string(c.boundary.at(i, j)), w);
        os << "\n";
    }
    os << "boundary squared is zero: " << (check_boundary_squared(c) ? "yes" : "no") << "\n";
    return os.str();
}

std::string render_homology(const std::vector<HomologyGroup>& h) {
    std::ostringstream os;
    os << "homology:";
    for (std::size_t k = 0; k < h.size(); ++k) {
        os << " H" << k << "=";
        std::string term;
        if (h[k].betti > 0) term = h[k].betti == 1 ? "Z" : "Z^" + std::to_string(h[k].betti);
        for (const auto& t : h[k].torsion) term += (term.empty() ? "" : "+") + std::string("Z/") + to_string(t);
        os << (term.empty() ? "0" : term);
    }
    os << "\n";
    return os.str();
}

std::string render_pivot_matrix(const IntMatrix& m, const std::vector<PivotMark>& marks) {
    std::ostringstream os;
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    std::size_t w = 2;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::string v = to_string(m.at(i, j));
            for (const auto& p : marks) {
                if (p.row == i + 1 && p.col == j + 1) v = p.kind == PivotKind::Primary ? "[" + v + "]" : "(" + v + ")";
            }
            cells[i][j] = v;
            w = std::max(w, v.size() + 1);
        }
    }
    for (const auto& row : cells) {
        for (const auto& c : row) os << pad(c, w);
        os << "\n";
    }
    return os.str();
}

std::string render_sweep(const SweepTrace& t, const std::vector<std::string>& labels, const PipelineOptions& opt) {
    std::ostringstream os;
    os << "== sweep ==\n";
    for (int r = 1; r < t.last_round(); ++r) {
        if (opt.diagonal > 0 && r > opt.diagonal) break;
        auto marks = marks_for_round(t.pivots, r);
        if (!marks.empty()) {
            os << "round " << r << ":\n";
            for (const auto& p : marks) {
                os << "  " << (p.kind == PivotKind::Primary ? "primary " : "change of basis ") << pivot_label(p, labels)
                   << " value " << p.value << "\n";
            }
        }
        if (opt.trace) {
            os << "matrix at round " << r << ":\n" << render_pivot_matrix(t.delta(r), marks);
        }
    }
    std::size_t primaries = 0;
    for (const auto& p : t.pivots) primaries += (p.kind == PivotKind::Primary && (opt.diagonal == 0 || p.round <= opt.diagonal));
    os << "primary pivots: " << primaries << "\n";
    return os.str();
}

std::string render_rca(const RcaTrace& t, const std::vector<std::string>& labels, const PipelineOptions& opt) {
    std::ostringstream os;
    os << "== row cancellation ==\n";
    for (int r = 1; r < t.last_round(); ++r) {
        if (opt.diagonal > 0 && r > opt.diagonal) break;
        auto marks = marks_for_round(t.pivots, r);
        if (!marks.empty()) {
            os << "round " << r << ":\n";
            for (const auto& p : marks) os << "  primary " << pivot_label(p, labels) << " value " << p.value << "\n";
        }
        if (opt.trace) os << "matrix at round " << r << ":\n" << render_pivot_matrix(t.delta(r), marks);
    }
    return os.str();
}

int default_page_count(const SweepTrace& t) {
    int last = 0;
    for (const auto& p : t.pivots) {
        if (p.kind == PivotKind::Primary) last = std::max(last, p.round);
    }
    return last + 1;
}

std::string render_pages(const SweepTrace& t, const std::vector<std::string>& labels, int pages) {
    std::ostringstream os;
    os << "== pages ==\n";
    auto grid = page_table(t, pages);
    std::size_t w = 3;
    for (const auto& l : labels) w = std::max(w, l.size() + 1);
    os << pad("r\\p", 4);
    for (std::size_t p = 0; p < t.size(); ++p) os << pad(std::to_string(p), w);
    os << "\n" << pad("", 4);
    for (const auto& l : labels) os << pad(l, w);
    os << "\n";
    for (std::size_t r = 0; r < grid.size(); ++r) {
        os << pad("E" + std::to_string(r + 1), 4);
        for (auto v : grid[r]) os << pad(std::to_string(v), w);
        os << "\n";
    }
    os << "algebraic cancellations:\n";
    for (const auto& a : algebraic_cancellations(t)) {
        if (a.round > pages) continue;
        os << "  round " << a.round << ": E_" << a.source << " -> E_" << a.target << " pivot (" << a.pivot.row << ","
           << a.pivot.col << ")\n";
    }
    auto s = surviving_positions(t);
    os << "surviving positions by grade: " << s[0] << " " << s[1] << " " << s[2] << "\n";
    return os.str();
}

std::string render_schedule(const FlowFamily& fam) {
    std::ostringstream os;
    os << "== cancellation schedule ==\n";
    for (const auto& step : fam.schedule()) {
        os << "round " << step.round << ": (" << pair_column_label(step) << ", " << pair_row_label(step) << ") pivot ("
           << step.pivot_row << "," << step.pivot_col << ") "
           << (step.kind == CancellationKind::SaddleSink ? "saddle-sink" : "source-saddle") << " witness " << step.witness
           << "\n";
        os << "  merged " << describe(step.merged) << " from";
        for (const auto& p : step.participants) os << " " << p.id << "(m=" << p.type_number << ")";
        os << "\n";
        for (const auto& op : step.operations) {
            os << "  " << (step.kind == CancellationKind::SaddleSink ? "row " : "column ") << op.target << " += " << op.coefficient
               << " * " << op.source << "\n";
        }
    }
    const FlowSpec& last = fam.final_flow();
    int m_total = 0;
    for (const auto& s : last.singularities) m_total += type_number(s);
    os << "final flow: " << last.generator_order.size() << " generators, " << last.singularities.size()
       << " singularities, total type number " << m_total << "\n";
    for (const auto& s : last.singularities) os << "  " << describe(s) << "\n";
    return os.str();
}

std::string render_consonance(const ConsonanceReport& c) {
    std::ostringstream os;
    os << "== consonance ==\n";
    for (const auto& row : c.rows) {
        os << "round " << row.round << " (" << row.row << "," << row.col << ") algebraic=" << (row.algebraic ? "yes" : "no")
           << " dynamical=" << (row.dynamical ? "yes" : "no") << (row.pair.empty() ? "" : " " + row.pair) << "\n";
    }
    os << "bijective: " << (c.bijective ? "yes" : "no") << "\n";
    return os.str();
}

Report run_pipeline(const FlowSpec& input, const PipelineOptions& opt) {
    Report rep;
    std::ostringstream os;
    auto diags = validate_flow(input);
    os << render_validation(input, diags);
    if (!diags.empty()) {
        rep.text = os.str();
        rep.exit_code = kExitValidation;
        return rep;
    }
    try {
        const FlowSpec f = prepare_flow(input, opt.canonical_order);
        const GSComplex c = build_complex(f);
        os << render_boundary(c);
        if (!check_boundary_squared(c)) {
            rep.text = os.str();
            rep.exit_code = kExitStructural;
            return rep;
        }
        os << render_homology(complex_homology(c));
        FlowFamily fam = flow_family(f, opt.diagonal);
        const auto labels = c.labels();
        os << render_sweep(fam.sweep, labels, opt);
        if (opt.trace) os << render_rca(fam.rca, labels, opt);
        int pages = default_page_count(fam.sweep);
        if (opt.diagonal > 0) pages = std::min(pages, opt.diagonal);
        os << render_pages(fam.sweep, labels, pages);
        os << render_schedule(fam);
        auto algebraic = algebraic_cancellations(fam.sweep);
        if (opt.diagonal > 0) {
            algebraic.erase(std::remove_if(algebraic.begin(), algebraic.end(),
                                           [&](const AlgebraicCancellation& a) { return a.round > opt.diagonal; }),
                            algebraic.end());
        }
        auto cons = consonance_report(algebraic, fam.schedule());
        os << render_consonance(cons);
        if (opt.diagonal == 0) {
            bool einf = e_infinity_check(fam.sweep, c);
            os << "E-infinity matches homology: " << (einf ? "yes" : "no") << "\n";
            if (!einf) rep.exit_code = kExitStructural;
        }
        if (!cons.bijective) rep.exit_code = kExitStructural;
    } catch (const Error& e) {
        os << "error: " << e.what() << "\n";
        rep.exit_code = exit_code_for(e.kind());
    }
    rep.text = os.str();
    return rep;
}

}  // namespace gsflow

#pragma once

#include <string>
#include <vector>

#include "gsflow/cancellation.hpp"
#include "gsflow/flow_model.hpp"
#include "gsflow/gs_complex.hpp"
#include "gsflow/morsification.hpp"
#include "gsflow/rca.hpp"
#include "gsflow/spectral_sequence.hpp"
#include "gsflow/sssa.hpp"

namespace gsflow {

enum ExitCode { kExitOk = 0, kExitValidation = 1, kExitStructural = 2, kExitIo = 3 };

int exit_code_for(ErrorKind kind);

struct PipelineOptions {
    int diagonal = 0;  // 0 means no truncation
    bool canonical_order = false;
    bool trace = false;
};

struct Report {
    std::string text;
    int exit_code = kExitOk;
};

// Applies the canonical order when requested and normalizes the flow.
FlowSpec prepare_flow(const FlowSpec& f, bool canonical_order);

std::string render_validation(const FlowSpec& f, const std::vector<Diagnostic>& diags);
std::string render_morsification(const MorsifiedFlow& m);
std::string render_boundary(const GSComplex& c);
std::string render_homology(const std::vector<HomologyGroup>& h);
std::string render_pivot_matrix(const IntMatrix& m, const std::vector<PivotMark>& marks);
std::string render_sweep(const SweepTrace& t, const std::vector<std::string>& labels, const PipelineOptions& opt);
std::string render_rca(const RcaTrace& t, const std::vector<std::string>& labels, const PipelineOptions& opt);
std::string render_pages(const SweepTrace& t, const std::vector<std::string>& labels, int pages);
std::string render_schedule(const FlowFamily& fam);
std::string render_consonance(const ConsonanceReport& c);

int default_page_count(const SweepTrace& t);

Report run_pipeline(const FlowSpec& f, const PipelineOptions& opt);

}  // namespace gsflow

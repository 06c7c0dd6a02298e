#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gsflow/flow_model.hpp"
#include "gsflow/gs_complex.hpp"
#include "gsflow/int_matrix.hpp"
#include "gsflow/rca.hpp"
#include "gsflow/spectral_sequence.hpp"
#include "gsflow/sssa.hpp"

namespace gsflow {

enum class CancellationKind { SaddleSink, SourceSaddle };

// target += coefficient * source, applied to rows (saddle-sink) or columns (source-saddle).
struct RowOperation {
    std::string target;
    std::string source;
    Integer coefficient;
};

struct Participant {
    std::string id;
    int type_number = 0;
};

struct CancellationStep {
    int round = 0;
    std::size_t pivot_row = 0;  // 1-based positions in the original generator order
    std::size_t pivot_col = 0;
    CancellationKind kind = CancellationKind::SaddleSink;
    std::string saddle;   // generator labels
    std::string partner;  // the sink or source generator
    std::string witness;
    std::vector<Participant> participants;
    Singularity merged;
    int merged_type_number = 0;
    std::vector<std::string> removed;
    std::vector<RowOperation> operations;
};

// Label of the upper (column) and lower (row) generator of the cancelled pair.
std::string pair_column_label(const CancellationStep& s);
std::string pair_row_label(const CancellationStep& s);

struct CancelResult {
    FlowSpec flow;
    CancellationStep step;
    IntMatrix boundary;  // boundary of the new flow in its generator order
};

// Cancels a pair of consecutive generators, given by label.
CancelResult cancel_pair(const FlowSpec& f, const std::string& saddle_label, const std::string& partner_label);

struct FamilyStage {
    int round = 0;
    FlowSpec flow;
    std::vector<CancellationStep> steps;
};

struct FlowFamily {
    std::vector<FamilyStage> stages;  // stages[0] is the input flow
    SweepTrace sweep;
    RcaTrace rca;

    const FlowSpec& final_flow() const { return stages.back().flow; }
    std::vector<CancellationStep> schedule() const;
};

FlowFamily flow_family(const FlowSpec& f, int max_round = 0);

// True when no +-1 entry between consecutive generators still has a valid witness.
bool is_minimal(const FlowSpec& f);

struct ConsonanceRow {
    int round = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    bool algebraic = false;
    bool dynamical = false;
    std::string pair;
};

struct ConsonanceReport {
    std::vector<ConsonanceRow> rows;
    bool bijective = true;
};

ConsonanceReport consonance_report(const FlowSpec& f);
ConsonanceReport consonance_report(const std::vector<AlgebraicCancellation>& algebraic,
                                   const std::vector<CancellationStep>& schedule);

}  // namespace gsflow

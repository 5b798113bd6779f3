#pragma once

#include <vector>

#include "spancert/classify.hpp"
#include "spancert/components.hpp"

namespace spancert {

struct LevelTrace {
    int level = 0;
    BoxSet boxes;                   // stored candidate set (pruned when enabled)
    std::vector<double> residuals;  // center residuals aligned with boxes
    ComponentLabeling labeling;     // components of `boxes`
    bool spanning = false;
};

enum class TraceOutcome {
    SpanningCertified,  // every level up to k_max kept a spanning component
    NoSpanningAt,       // some level lost all spanning components; ladder stopped
};

struct TraceOptions {
    int k_start = 2;
    int k_max = 8;
    bool prune = true;  // keep only spanning components between levels
};

struct TraceResult {
    std::vector<LevelTrace> levels;
    TraceOutcome outcome = TraceOutcome::SpanningCertified;
    int outcome_level = 0;  // deepest certified level, or the level that failed
    // Exact Hausdorff distance between consecutive stored spanning sets;
    // entry i compares levels[i] and levels[i+1].
    std::vector<double> convergence;
};

// Run the candidate-set ladder: a full-grid scan at k_start, then each level
// is rebuilt from the children of the previous stored set.  With pruning the
// stored set keeps only spanning components (and the failing level, if any,
// stores the unpruned candidates for diagnosis).  Levels are capped two below
// the global maximum so the witness stage can always subdivide twice more.
TraceResult trace(const Oracle& o, const TraceOptions& opt = {});

// Deepest certified candidate set; throws unless spanning was certified.
const BoxSet& limit_estimate(const TraceResult& tr);

// Largest per-coordinate index extent of any single t column; a diagnostic
// for how tightly columns localize candidates.
std::int64_t max_column_x_extent(const BoxSet& s);

}  // namespace spancert

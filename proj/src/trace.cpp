#include "spancert/trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace spancert {

TraceResult trace(const Oracle& o, const TraceOptions& opt) {
    if (opt.k_start < 0 || opt.k_start > opt.k_max || opt.k_max > kMaxLevel - 2) {
        throw std::invalid_argument("trace: bad level range");
    }
    TraceResult tr;
    const BoxSet* previous = nullptr;
    for (int k = opt.k_start; k <= opt.k_max; ++k) {
        LevelBuild lb = build_level(o, k, previous);
        ComponentLabeling cl = label_components(lb.boxes);

        LevelTrace lt;
        lt.level = k;
        lt.spanning = cl.any_spanning();

        if (!lt.spanning) {
            // Keep the unpruned candidates so the failure can be inspected.
            lt.boxes = lb.boxes;
            lt.residuals = lb.residuals;
            lt.labeling = std::move(cl);
            tr.levels.push_back(std::move(lt));
            tr.outcome = TraceOutcome::NoSpanningAt;
            tr.outcome_level = k;
            break;
        }

        if (opt.prune) {
            BoxSet pruned = cl.spanning_union();
            std::vector<double> res;
            res.reserve(pruned.size());
            // Both box lists are lex sorted; walk them in lockstep.
            std::size_t src = 0;
            for (const auto& b : pruned.members()) {
                while (lb.boxes[src].index != b.index) ++src;
                res.push_back(lb.residuals[src]);
            }
            lt.boxes = std::move(pruned);
            lt.residuals = std::move(res);
            lt.labeling = label_components(lt.boxes);
        } else {
            lt.boxes = lb.boxes;
            lt.residuals = lb.residuals;
            lt.labeling = std::move(cl);
        }
        tr.levels.push_back(std::move(lt));
        previous = &tr.levels.back().boxes;
        tr.outcome = TraceOutcome::SpanningCertified;
        tr.outcome_level = k;
    }

    for (std::size_t i = 0; i + 1 < tr.levels.size(); ++i) {
        if (!tr.levels[i].spanning || !tr.levels[i + 1].spanning) break;
        tr.convergence.push_back(hausdorff(tr.levels[i].boxes, tr.levels[i + 1].boxes));
    }
    return tr;
}

const BoxSet& limit_estimate(const TraceResult& tr) {
    if (tr.outcome != TraceOutcome::SpanningCertified || tr.levels.empty()) {
        throw std::runtime_error("limit_estimate: trace did not certify spanning");
    }
    return tr.levels.back().boxes;
}

std::int64_t max_column_x_extent(const BoxSet& s) {
    std::int64_t worst = 0;
    const auto& m = s.members();
    std::size_t i = 0;
    while (i < m.size()) {
        std::size_t j = i;
        while (j < m.size() && m[j].index[0] == m[i].index[0]) ++j;
        for (int c = 1; c < s.dim(); ++c) {
            std::int64_t lo = m[i].index[static_cast<std::size_t>(c)];
            std::int64_t hi = lo;
            for (std::size_t r = i; r < j; ++r) {
                lo = std::min(lo, m[r].index[static_cast<std::size_t>(c)]);
                hi = std::max(hi, m[r].index[static_cast<std::size_t>(c)]);
            }
            worst = std::max(worst, hi - lo + 1);
        }
        i = j;
    }
    return worst;
}

}  // namespace spancert

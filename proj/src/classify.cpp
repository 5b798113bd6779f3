#include "spancert/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spancert {

double residual(const Oracle& o, const PointTX& p) {
    if (p.dim() != o.dim + 1) throw std::invalid_argument("residual: dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(o.dim));
    o.eval(p.t, p.x, out);
    double r = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(out[i]) || out[i] < 0.0 || out[i] > 1.0) {
            throw std::runtime_error("oracle range violation: " + o.name);
        }
        r = std::max(r, std::fabs(out[i] - p.x[i]));
    }
    return r;
}

double exclusion_threshold(const Oracle& o, int level) {
    const double r = std::ldexp(1.0, -(level + 1));
    return o.modulus(r) + r;
}

Verdict classify_box(const Oracle& o, const DyadicBox& b, double* residual_out) {
    const double res = residual(o, b.center_point());
    if (residual_out != nullptr) *residual_out = res;
    return res > exclusion_threshold(o, b.level) ? Verdict::Excluded : Verdict::Candidate;
}

LevelBuild build_level(const Oracle& o, int level, const BoxSet* restrict_to) {
    const int dim = o.dim + 1;
    std::vector<std::pair<DyadicBox, double>> kept;
    auto consider = [&](const DyadicBox& b) {
        double res = 0.0;
        if (classify_box(o, b, &res) == Verdict::Candidate) kept.emplace_back(b, res);
    };

    if (restrict_to == nullptr) {
        if (level * dim > 26) throw std::runtime_error("build_level: full grid too large");
        const std::int64_t cells = std::int64_t{1} << level;
        DyadicBox b{level, std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0)};
        while (true) {
            consider(b);
            int i = dim - 1;
            for (; i >= 0; --i) {
                if (++b.index[static_cast<std::size_t>(i)] < cells) break;
                b.index[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    } else {
        if (restrict_to->level() != level - 1) {
            throw std::invalid_argument("build_level: restriction must sit one level up");
        }
        if (restrict_to->dim() != dim) {
            throw std::invalid_argument("build_level: restriction dimension mismatch");
        }
        for (const auto& parent : restrict_to->members()) {
            for (const auto& child : parent.children()) consider(child);
        }
    }

    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return box_index_less(a.first, b.first);
    });
    std::vector<DyadicBox> boxes;
    std::vector<double> residuals;
    boxes.reserve(kept.size());
    residuals.reserve(kept.size());
    for (auto& [b, r] : kept) {
        boxes.push_back(std::move(b));
        residuals.push_back(r);
    }
    LevelBuild lb;
    lb.boxes = BoxSet::of(level, dim, std::move(boxes));
    lb.residuals = std::move(residuals);
    return lb;
}

}  // namespace spancert

#include "spancert/separation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spancert {

Separation Separation::split(const BoxSet& s) {
    ComponentLabeling cl = label_components(s);
    if (cl.any_spanning()) {
        throw std::invalid_argument("Separation::split: set has a spanning component");
    }
    std::vector<DyadicBox> lo;
    std::vector<DyadicBox> hi;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const ComponentInfo& c = cl.components()[static_cast<std::size_t>(cl.label(i))];
        (c.touches_t0 ? lo : hi).push_back(s[i]);
    }
    Separation sep;
    sep.level_ = s.level();
    sep.margin_ = std::ldexp(1.0, -(s.level() + 1));
    BoxSet a0 = BoxSet::of(s.level(), s.dim(), std::move(lo));
    BoxSet a1 = BoxSet::of(s.level(), s.dim(), std::move(hi));
    sep.gap_ = (a0.empty() || a1.empty()) ? std::numeric_limits<double>::infinity()
                                          : dist_boxset_boxset(a0, a1);
    sep.a0_index_ = BoxSetIndex(a0);
    sep.a1_index_ = BoxSetIndex(a1);
    return sep;
}

bool Separation::in_o0(const PointTX& p) const {
    if (a0_index_.empty()) return false;
    return a0_index_.dist_point(p) < margin_;
}

bool Separation::in_o1(const PointTX& p) const {
    if (a1_index_.empty()) return false;
    return a1_index_.dist_point(p) < margin_;
}

}  // namespace spancert

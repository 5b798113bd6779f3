#pragma once

#include "spancert/components.hpp"
#include "spancert/geometry.hpp"

namespace spancert {

// Two-sided separation of a non-spanning candidate set at level k:
//   a0 = union of components touching t = 0,   a1 = all remaining boxes.
// The open neighbourhoods O0/O1 collect points strictly within
// margin = 2^-(k+1) of the respective side.  Because distinct components
// never touch, the exact gap between the sides is at least 2^-k = 2*margin,
// so O0 and O1 are disjoint.
class Separation {
  public:
    // Throws std::invalid_argument when the set still has a spanning
    // component.  An empty set splits into two empty sides.
    static Separation split(const BoxSet& s);

    int level() const { return level_; }
    double margin() const { return margin_; }
    // Exact set distance between the sides; +infinity when a side is empty.
    double gap() const { return gap_; }
    const BoxSet& a0() const { return a0_index_.set(); }
    const BoxSet& a1() const { return a1_index_.set(); }

    // Strict membership d(p, side) < margin; false against an empty side.
    bool in_o0(const PointTX& p) const;
    bool in_o1(const PointTX& p) const;

  private:
    int level_ = 0;
    double margin_ = 0.0;
    double gap_ = 0.0;
    BoxSetIndex a0_index_;
    BoxSetIndex a1_index_;
};

}  // namespace spancert

#pragma once

#include <cstdint>
#include <vector>

#include "spancert/geometry.hpp"

namespace spancert {

struct ComponentInfo {
    bool touches_t0 = false;   // contains a box with t index 0
    bool touches_t1 = false;   // contains a box with t index 2^k - 1
    bool spanning = false;     // occupies every t column
    std::size_t box_count = 0;
    std::vector<std::uint64_t> column_mask;  // bit j set when column j is occupied
};

// Connected components of a box set under closed-box contact (all index
// offsets in {-1,0,1}, corners included).  Component ids are dense and
// assigned in order of first appearance in the lex box order.
class ComponentLabeling {
  public:
    ComponentLabeling() = default;
    ComponentLabeling(BoxSet boxes, std::vector<std::int32_t> labels,
                      std::vector<ComponentInfo> comps);

    const BoxSet& boxes() const { return boxes_; }
    std::int32_t label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::int32_t>& labels() const { return labels_; }
    const std::vector<ComponentInfo>& components() const { return comps_; }
    std::size_t component_count() const { return comps_.size(); }

    std::vector<std::int32_t> spanning_ids() const;
    bool any_spanning() const;
    // Union of all boxes whose component spans; empty set when none does.
    BoxSet spanning_union() const;
    // Union of the components containing a given face (t index 0 resp. 2^k-1).
    BoxSet face_union(bool t1_face) const;

  private:
    BoxSet boxes_;
    std::vector<std::int32_t> labels_;
    std::vector<ComponentInfo> comps_;
};

ComponentLabeling label_components(const BoxSet& s);

}  // namespace spancert

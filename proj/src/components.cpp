#include "spancert/components.hpp"

#include <algorithm>
#include <stdexcept>

namespace spancert {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }

    std::size_t find(std::size_t a) {
        std::size_t root = a;
        while (parent[root] != root) root = parent[root];
        while (parent[a] != root) {
            std::size_t next = parent[a];
            parent[a] = root;
            a = next;
        }
        return root;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

}  // namespace

ComponentLabeling::ComponentLabeling(BoxSet boxes, std::vector<std::int32_t> labels,
                                     std::vector<ComponentInfo> comps)
    : boxes_(std::move(boxes)), labels_(std::move(labels)), comps_(std::move(comps)) {}

std::vector<std::int32_t> ComponentLabeling::spanning_ids() const {
    std::vector<std::int32_t> ids;
    for (std::size_t c = 0; c < comps_.size(); ++c) {
        if (comps_[c].spanning) ids.push_back(static_cast<std::int32_t>(c));
    }
    return ids;
}

bool ComponentLabeling::any_spanning() const {
    return std::any_of(comps_.begin(), comps_.end(),
                       [](const ComponentInfo& c) { return c.spanning; });
}

BoxSet ComponentLabeling::spanning_union() const {
    std::vector<DyadicBox> keep;
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
        if (comps_[static_cast<std::size_t>(labels_[i])].spanning) keep.push_back(boxes_[i]);
    }
    return BoxSet::of(boxes_.level(), boxes_.dim(), std::move(keep));
}

BoxSet ComponentLabeling::face_union(bool t1_face) const {
    std::vector<DyadicBox> keep;
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
        const ComponentInfo& c = comps_[static_cast<std::size_t>(labels_[i])];
        if (t1_face ? c.touches_t1 : c.touches_t0) keep.push_back(boxes_[i]);
    }
    return BoxSet::of(boxes_.level(), boxes_.dim(), std::move(keep));
}

ComponentLabeling label_components(const BoxSet& s) {
    const std::size_t n = s.size();
    const int dim = s.dim();
    UnionFind uf(n);

    // Probe every neighbour offset; binary search keeps this deterministic
    // and allocation-free apart from the scratch index vector.
    std::vector<std::int64_t> probe(static_cast<std::size_t>(dim));
    std::vector<int> off(static_cast<std::size_t>(dim), -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(off.begin(), off.end(), -1);
        while (true) {
            bool all_zero = true;
            for (int c = 0; c < dim; ++c) {
                probe[static_cast<std::size_t>(c)] =
                    s[i].index[static_cast<std::size_t>(c)] + off[static_cast<std::size_t>(c)];
                all_zero = all_zero && off[static_cast<std::size_t>(c)] == 0;
            }
            if (!all_zero) {
                const std::ptrdiff_t j = s.position_of(probe);
                if (j >= 0) uf.unite(i, static_cast<std::size_t>(j));
            }
            int c = dim - 1;
            for (; c >= 0; --c) {
                if (++off[static_cast<std::size_t>(c)] <= 1) break;
                off[static_cast<std::size_t>(c)] = -1;
            }
            if (c < 0) break;
        }
    }

    // Dense component ids in order of first appearance.
    std::vector<std::int32_t> labels(n, -1);
    std::vector<std::size_t> root_of_comp;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = uf.find(i);
        std::int32_t id = -1;
        for (std::size_t c = 0; c < root_of_comp.size(); ++c) {
            if (root_of_comp[c] == r) {
                id = static_cast<std::int32_t>(c);
                break;
            }
        }
        if (id < 0) {
            id = static_cast<std::int32_t>(root_of_comp.size());
            root_of_comp.push_back(r);
        }
        labels[i] = id;
    }

    const std::int64_t cols = std::int64_t{1} << s.level();
    const std::size_t words = static_cast<std::size_t>((cols + 63) / 64);
    std::vector<ComponentInfo> comps(root_of_comp.size());
    for (auto& c : comps) c.column_mask.assign(words, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ComponentInfo& c = comps[static_cast<std::size_t>(labels[i])];
        const std::int64_t jt = s[i].index[0];
        c.box_count += 1;
        c.touches_t0 = c.touches_t0 || jt == 0;
        c.touches_t1 = c.touches_t1 || jt == cols - 1;
        c.column_mask[static_cast<std::size_t>(jt / 64)] |= std::uint64_t{1}
                                                            << (jt % 64);
    }
    for (auto& c : comps) {
        bool full = true;
        for (std::int64_t j = 0; j < cols && full; j += 64) {
            const std::uint64_t want =
                (cols - j >= 64) ? ~std::uint64_t{0}
                                 : ((std::uint64_t{1} << (cols - j)) - 1);
            full = c.column_mask[static_cast<std::size_t>(j / 64)] == want;
        }
        c.spanning = full;
    }

    return ComponentLabeling(s, std::move(labels), std::move(comps));
}

}  // namespace spancert

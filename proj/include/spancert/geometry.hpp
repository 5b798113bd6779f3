#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace spancert {

// Deepest subdivision level supported.  Indices at level k lie in [0, 2^k),
// so level 30 keeps every integer quantity used by the exact distance
// routines comfortably inside int64.
inline constexpr int kMaxLevel = 30;

// A point (t, x) in [0,1] x [0,1]^n.  Coordinate 0 is t, coordinates
// 1..n are the spatial ones.
struct PointTX {
    double t = 0.0;
    std::vector<double> x;

    int dim() const { return 1 + static_cast<int>(x.size()); }
    double coord(int i) const { return i == 0 ? t : x[static_cast<size_t>(i) - 1]; }
};

// L-infinity distance between two points of equal dimension.
double dist_inf(const PointTX& a, const PointTX& b);

// Closed axis-aligned dyadic cube: the product over coordinates i of
// [index[i] * 2^-level, (index[i]+1) * 2^-level].  index[0] is the t axis.
struct DyadicBox {
    int level = 0;
    std::vector<std::int64_t> index;

    int dim() const { return static_cast<int>(index.size()); }
    double lo(int i) const;
    double hi(int i) const;
    // Center coordinate (2*j+1)/2^(level+1); exact in double for level < 52.
    double center(int i) const;
    PointTX center_point() const;

    DyadicBox parent() const;
    std::vector<DyadicBox> children() const;

    bool contains(const PointTX& p) const;

    friend bool operator==(const DyadicBox&, const DyadicBox&) = default;
};

// True when the closed boxes intersect (same level required): all index
// offsets are in {-1, 0, 1}, corners included.
bool boxes_touch(const DyadicBox& a, const DyadicBox& b);

// Lexicographic order on index vectors (boxes assumed same level/dim).
bool box_index_less(const DyadicBox& a, const DyadicBox& b);

// A finite union of dyadic boxes, all at one level and one dimension,
// kept lex-sorted by index and duplicate-free.  An empty set still
// carries its level and dimension.
class BoxSet {
  public:
    BoxSet() = default;

    // Validates levels, dimensions and index ranges, sorts and dedups.
    static BoxSet of(int level, int dim, std::vector<DyadicBox> boxes);
    static BoxSet empty_set(int level, int dim);
    // Every box at the given level; refuses to build more than 2^26 boxes.
    static BoxSet full_grid(int level, int dim);

    int level() const { return level_; }
    int dim() const { return dim_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<DyadicBox>& members() const { return members_; }
    const DyadicBox& operator[](std::size_t i) const { return members_[i]; }

    // Binary search; -1 when absent.
    std::ptrdiff_t position_of(const std::vector<std::int64_t>& index) const;
    bool contains_index(const std::vector<std::int64_t>& index) const;

    // Each box replaced by its 2^((L-level)*dim) descendants at level L.
    BoxSet refine_to_level(int L) const;

  private:
    int level_ = 0;
    int dim_ = 0;
    std::vector<DyadicBox> members_;
};

// L-infinity distance from a point to a single box (0 when inside).
double dist_point_box(const PointTX& p, const DyadicBox& b);

// min over the set's boxes; throws on an empty set.
double dist_point_boxset(const PointTX& p, const BoxSet& s);

// Exact L-infinity set distance min{d(a,b) : a in A, b in B}.  Levels may
// differ; the computation is integer arithmetic at the common scale, so the
// returned double is the exact dyadic value.  Throws when either set is empty.
double dist_boxset_boxset(const BoxSet& a, const BoxSet& b);

// Band index over a BoxSet for fast nearest-box queries.  Boxes are grouped
// by t index (they are contiguous in the lex order); bands are visited
// outward from the query's t position and abandoned as soon as the t gap
// alone exceeds the best distance found.
class BoxSetIndex {
  public:
    BoxSetIndex() = default;
    explicit BoxSetIndex(const BoxSet& s);

    const BoxSet& set() const { return set_; }
    bool empty() const { return set_.empty(); }

    // Exact distance (in units of 2^-U) from an integer lattice point given
    // in U-units to the box union.  Returns early with some value
    // <= abort_below once the running minimum drops that far.
    std::int64_t min_dist_units(std::span<const std::int64_t> v, int U,
                                std::int64_t abort_below) const;

    // Floating-point distance from an arbitrary point to the box union.
    double dist_point(const PointTX& p) const;

  private:
    BoxSet set_;
    std::vector<std::int64_t> band_t_;       // distinct index[0] values
    std::vector<std::size_t> band_start_;    // band_t_.size()+1 offsets
};

// Exact directed Hausdorff distance sup{d(a, B) : a in union(A)}.
//
// Every distance-to-union function restricted to a box is piecewise linear
// with kinks only where two per-coordinate gap expressions exchange the max
// or where two boxes exchange the min; those loci are of the form
// y_i = c, y_i - y_j = c, or y_i + y_j = c with c dyadic of level
// max(level A, level B), so maximizers can be chosen on the half-step grid
// one level finer.  Enumerating that grid inside A gives the exact value.
double directed_hausdorff(const BoxSet& a, const BoxSet& b);

// max of the two directed distances.
double hausdorff(const BoxSet& a, const BoxSet& b);

// Exact sup over the single box b of the distance to the union s
// (directed Hausdorff with a one-box left side).  The BoxSetIndex overload
// lets callers reuse one prebuilt index across many boxes.
double box_sup_dist(const DyadicBox& b, const BoxSet& s);
double box_sup_dist(const DyadicBox& b, const BoxSetIndex& s);

}  // namespace spancert

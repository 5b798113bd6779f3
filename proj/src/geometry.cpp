#include "spancert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spancert {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double dist_inf(const PointTX& a, const PointTX& b) {
    require(a.dim() == b.dim(), "dist_inf: dimension mismatch");
    double m = std::fabs(a.t - b.t);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        m = std::max(m, std::fabs(a.x[i] - b.x[i]));
    }
    return m;
}

double DyadicBox::lo(int i) const {
    return std::ldexp(static_cast<double>(index[static_cast<std::size_t>(i)]), -level);
}

double DyadicBox::hi(int i) const {
    return std::ldexp(static_cast<double>(index[static_cast<std::size_t>(i)] + 1), -level);
}

double DyadicBox::center(int i) const {
    return std::ldexp(static_cast<double>(2 * index[static_cast<std::size_t>(i)] + 1),
                      -(level + 1));
}

PointTX DyadicBox::center_point() const {
    PointTX p;
    p.t = center(0);
    p.x.resize(index.size() - 1);
    for (int i = 1; i < dim(); ++i) p.x[static_cast<std::size_t>(i) - 1] = center(i);
    return p;
}

DyadicBox DyadicBox::parent() const {
    if (level == 0) throw std::logic_error("parent: level-0 box has no parent");
    DyadicBox p{level - 1, index};
    for (auto& j : p.index) j >>= 1;
    return p;
}

std::vector<DyadicBox> DyadicBox::children() const {
    if (level >= kMaxLevel) throw std::runtime_error("children: level cap exceeded");
    const int d = dim();
    std::vector<DyadicBox> out;
    out.reserve(std::size_t{1} << d);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << d); ++m) {
        DyadicBox c{level + 1, index};
        for (int i = 0; i < d; ++i) {
            c.index[static_cast<std::size_t>(i)] =
                2 * index[static_cast<std::size_t>(i)] + ((m >> i) & 1u);
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool DyadicBox::contains(const PointTX& p) const {
    require(p.dim() == dim(), "contains: dimension mismatch");
    for (int i = 0; i < dim(); ++i) {
        double c = p.coord(i);
        if (c < lo(i) || c > hi(i)) return false;
    }
    return true;
}

bool boxes_touch(const DyadicBox& a, const DyadicBox& b) {
    require(a.level == b.level && a.dim() == b.dim(), "boxes_touch: mismatched boxes");
    for (int i = 0; i < a.dim(); ++i) {
        std::int64_t d = a.index[static_cast<std::size_t>(i)] -
                         b.index[static_cast<std::size_t>(i)];
        if (d < -1 || d > 1) return false;
    }
    return true;
}

bool box_index_less(const DyadicBox& a, const DyadicBox& b) { return a.index < b.index; }

BoxSet BoxSet::of(int level, int dim, std::vector<DyadicBox> boxes) {
    require(level >= 0 && level <= kMaxLevel, "BoxSet: level out of range");
    require(dim >= 1, "BoxSet: dimension must be positive");
    const std::int64_t cells = std::int64_t{1} << level;
    for (const auto& b : boxes) {
        require(b.level == level, "BoxSet: box level mismatch");
        require(b.dim() == dim, "BoxSet: box dimension mismatch");
        for (std::int64_t j : b.index) {
            require(j >= 0 && j < cells, "BoxSet: box index out of range");
        }
    }
    std::sort(boxes.begin(), boxes.end(), box_index_less);
    boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
    BoxSet s;
    s.level_ = level;
    s.dim_ = dim;
    s.members_ = std::move(boxes);
    return s;
}

BoxSet BoxSet::empty_set(int level, int dim) { return of(level, dim, {}); }

BoxSet BoxSet::full_grid(int level, int dim) {
    require(level >= 0 && level <= kMaxLevel, "full_grid: level out of range");
    require(dim >= 1, "full_grid: dimension must be positive");
    if (level * dim > 26) throw std::runtime_error("full_grid: too many boxes");
    const std::int64_t cells = std::int64_t{1} << level;
    std::vector<DyadicBox> boxes;
    boxes.reserve(static_cast<std::size_t>(std::int64_t{1} << (level * dim)));
    DyadicBox b{level, std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0)};
    while (true) {
        boxes.push_back(b);
        int i = dim - 1;
        for (; i >= 0; --i) {
            if (++b.index[static_cast<std::size_t>(i)] < cells) break;
            b.index[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    BoxSet s;
    s.level_ = level;
    s.dim_ = dim;
    s.members_ = std::move(boxes);  // generated in lex order
    return s;
}

std::ptrdiff_t BoxSet::position_of(const std::vector<std::int64_t>& index) const {
    auto it = std::lower_bound(
        members_.begin(), members_.end(), index,
        [](const DyadicBox& b, const std::vector<std::int64_t>& v) { return b.index < v; });
    if (it == members_.end() || it->index != index) return -1;
    return it - members_.begin();
}

bool BoxSet::contains_index(const std::vector<std::int64_t>& index) const {
    return position_of(index) >= 0;
}

BoxSet BoxSet::refine_to_level(int L) const {
    require(L >= level_ && L <= kMaxLevel, "refine_to_level: bad target level");
    const int s = L - level_;
    const double factor = std::pow(2.0, s * dim_);
    if (static_cast<double>(members_.size()) * factor > static_cast<double>(1 << 26)) {
        throw std::runtime_error("refine_to_level: too many boxes");
    }
    std::vector<DyadicBox> out;
    out.reserve(static_cast<std::size_t>(static_cast<double>(members_.size()) * factor));
    const std::int64_t span = std::int64_t{1} << s;
    for (const auto& b : members_) {
        DyadicBox c{L, std::vector<std::int64_t>(b.index.size())};
        std::vector<std::int64_t> off(b.index.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < b.index.size(); ++i) {
                c.index[i] = (b.index[i] << s) + off[i];
            }
            out.push_back(c);
            int i = static_cast<int>(off.size()) - 1;
            for (; i >= 0; --i) {
                if (++off[static_cast<std::size_t>(i)] < span) break;
                off[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }
    return of(L, dim_, std::move(out));
}

double dist_point_box(const PointTX& p, const DyadicBox& b) {
    require(p.dim() == b.dim(), "dist_point_box: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < b.dim(); ++i) {
        double c = p.coord(i);
        m = std::max({m, b.lo(i) - c, c - b.hi(i)});
    }
    return m;
}

double dist_point_boxset(const PointTX& p, const BoxSet& s) {
    require(!s.empty(), "dist_point_boxset: empty set");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : s.members()) best = std::min(best, dist_point_box(p, b));
    return best;
}

double dist_boxset_boxset(const BoxSet& a, const BoxSet& b) {
    require(!a.empty() && !b.empty(), "dist_boxset_boxset: empty set");
    require(a.dim() == b.dim(), "dist_boxset_boxset: dimension mismatch");
    const int L = std::max(a.level(), b.level());
    const int sa = L - a.level();
    const int sb = L - b.level();
    const int d = a.dim();

    // Contiguous runs sharing a leading (t) index; members are lex-sorted.
    struct Band {
        std::int64_t t = 0;
        std::size_t begin = 0;
        std::size_t end = 0;
    };
    auto bands_of = [](const BoxSet& s) {
        std::vector<Band> bands;
        const auto& m = s.members();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (bands.empty() || m[i].index[0] != bands.back().t) {
                bands.push_back({m[i].index[0], i, i + 1});
            } else {
                bands.back().end = i + 1;
            }
        }
        return bands;
    };
    const std::vector<Band> abands = bands_of(a);
    const std::vector<Band> bbands = bands_of(b);

    auto column_gap = [&](std::int64_t ta, std::int64_t tb) {
        const std::int64_t alo = ta << sa;
        const std::int64_t ahi = alo + (std::int64_t{1} << sa);
        const std::int64_t blo = tb << sb;
        const std::int64_t bhi = blo + (std::int64_t{1} << sb);
        return std::max({std::int64_t{0}, blo - ahi, alo - bhi});
    };

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    auto scan = [&](const Band& A, const Band& B) {
        for (std::size_t i = A.begin; i < A.end && best > 0; ++i) {
            for (std::size_t j = B.begin; j < B.end; ++j) {
                std::int64_t g = 0;
                for (int c = 0; c < d && g < best; ++c) {
                    const std::int64_t alo = a[i].index[static_cast<std::size_t>(c)] << sa;
                    const std::int64_t ahi = alo + (std::int64_t{1} << sa);
                    const std::int64_t blo = b[j].index[static_cast<std::size_t>(c)] << sb;
                    const std::int64_t bhi = blo + (std::int64_t{1} << sb);
                    g = std::max({g, blo - ahi, alo - bhi});
                }
                best = std::min(best, g);
                if (best == 0) return;
            }
        }
    };

    // For each a band walk b's bands outward from the nearest column; a band
    // whose column gap alone reaches `best` cannot improve the minimum.
    for (const Band& A : abands) {
        const std::size_t mid = static_cast<std::size_t>(
            std::lower_bound(bbands.begin(), bbands.end(), A.t,
                             [&](const Band& B, std::int64_t ta) {
                                 return (B.t << sb) < (ta << sa);
                             }) -
            bbands.begin());
        std::size_t l = mid;
        std::size_t r = mid;
        while (l > 0 || r < bbands.size()) {
            const std::int64_t gl =
                l > 0 ? column_gap(A.t, bbands[l - 1].t) : std::numeric_limits<std::int64_t>::max();
            const std::int64_t gr = r < bbands.size()
                                        ? column_gap(A.t, bbands[r].t)
                                        : std::numeric_limits<std::int64_t>::max();
            if (std::min(gl, gr) >= best) break;
            if (gl <= gr) {
                scan(A, bbands[--l]);
            } else {
                scan(A, bbands[r++]);
            }
            if (best == 0) return 0.0;
        }
    }
    return std::ldexp(static_cast<double>(best), -L);
}

BoxSetIndex::BoxSetIndex(const BoxSet& s) : set_(s) {
    const auto& m = set_.members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == 0 || m[i].index[0] != m[i - 1].index[0]) {
            band_t_.push_back(m[i].index[0]);
            band_start_.push_back(i);
        }
    }
    band_start_.push_back(m.size());
}

std::int64_t BoxSetIndex::min_dist_units(std::span<const std::int64_t> v, int U,
                                         std::int64_t abort_below) const {
    if (set_.empty()) throw std::invalid_argument("min_dist_units: empty set");
    const int d = set_.dim();
    require(static_cast<int>(v.size()) == d, "min_dist_units: dimension mismatch");
    const int s = U - set_.level();
    require(s >= 0, "min_dist_units: query grid coarser than set");
    const std::int64_t w = std::int64_t{1} << s;
    const auto& mem = set_.members();

    auto tgap_of = [&](std::size_t band) {
        const std::int64_t lo = band_t_[band] << s;
        return std::max({std::int64_t{0}, lo - v[0], v[0] - (lo + w)});
    };
    auto band_best = [&](std::size_t band, std::int64_t tgap, std::int64_t cap) {
        const std::size_t b0 = band_start_[band];
        const std::size_t b1 = band_start_[band + 1];
        if (d == 2) {
            // Within a band index[1] is strictly increasing, so only the two
            // boxes straddling v[1] can realize the minimal x gap.
            auto it = std::lower_bound(
                mem.begin() + static_cast<std::ptrdiff_t>(b0),
                mem.begin() + static_cast<std::ptrdiff_t>(b1), v[1] >> s,
                [](const DyadicBox& bx, std::int64_t q) { return bx.index[1] < q; });
            std::int64_t gx = std::numeric_limits<std::int64_t>::max();
            auto consider = [&](const DyadicBox& bx) {
                const std::int64_t lo = bx.index[1] << s;
                gx = std::min(gx, std::max({std::int64_t{0}, lo - v[1], v[1] - (lo + w)}));
            };
            if (it != mem.begin() + static_cast<std::ptrdiff_t>(b0)) consider(*std::prev(it));
            if (it != mem.begin() + static_cast<std::ptrdiff_t>(b1)) consider(*it);
            return std::max(tgap, gx);
        }
        std::int64_t bb = std::numeric_limits<std::int64_t>::max();
        for (std::size_t i = b0; i < b1; ++i) {
            std::int64_t g = tgap;
            for (int c = 1; c < d && g < bb; ++c) {
                const std::int64_t lo = mem[i].index[static_cast<std::size_t>(c)] << s;
                const std::int64_t vc = v[static_cast<std::size_t>(c)];
                g = std::max({g, lo - vc, vc - (lo + w)});
            }
            bb = std::min(bb, g);
            if (bb <= cap) break;
        }
        return bb;
    };

    const std::int64_t q0 = v[0] >= 0 ? (v[0] >> s) : -1;
    std::size_t r = static_cast<std::size_t>(
        std::lower_bound(band_t_.begin(), band_t_.end(), q0) - band_t_.begin());
    std::size_t l = r;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    while (true) {
        const std::int64_t tr = r < band_t_.size() ? tgap_of(r) : inf;
        const std::int64_t tl = l > 0 ? tgap_of(l - 1) : inf;
        if (tr == inf && tl == inf) break;
        if (std::min(tr, tl) >= best) break;
        if (tr <= tl) {
            best = std::min(best, band_best(r, tr, abort_below));
            ++r;
        } else {
            best = std::min(best, band_best(l - 1, tl, abort_below));
            --l;
        }
        if (best <= abort_below) return best;
    }
    return best;
}

double BoxSetIndex::dist_point(const PointTX& p) const {
    if (set_.empty()) throw std::invalid_argument("dist_point: empty set");
    const int d = set_.dim();
    require(p.dim() == d, "dist_point: dimension mismatch");
    const int k = set_.level();
    const double w = std::ldexp(1.0, -k);
    const auto& mem = set_.members();

    auto tgap_of = [&](std::size_t band) {
        const double lo = std::ldexp(static_cast<double>(band_t_[band]), -k);
        return std::max({0.0, lo - p.t, p.t - (lo + w)});
    };
    auto band_best = [&](std::size_t band, double tgap) {
        const std::size_t b0 = band_start_[band];
        const std::size_t b1 = band_start_[band + 1];
        if (d == 2) {
            auto it = std::lower_bound(
                mem.begin() + static_cast<std::ptrdiff_t>(b0),
                mem.begin() + static_cast<std::ptrdiff_t>(b1), p.x[0],
                [](const DyadicBox& bx, double val) { return bx.hi(1) < val; });
            double gx = std::numeric_limits<double>::infinity();
            auto consider = [&](const DyadicBox& bx) {
                const double lo = bx.lo(1);
                gx = std::min(gx, std::max({0.0, lo - p.x[0], p.x[0] - (lo + w)}));
            };
            if (it != mem.begin() + static_cast<std::ptrdiff_t>(b0)) consider(*std::prev(it));
            if (it != mem.begin() + static_cast<std::ptrdiff_t>(b1)) consider(*it);
            return std::max(tgap, gx);
        }
        double bb = std::numeric_limits<double>::infinity();
        for (std::size_t i = b0; i < b1; ++i) {
            double g = tgap;
            for (int c = 1; c < d && g < bb; ++c) {
                const double lo = mem[i].lo(c);
                const double vc = p.coord(c);
                g = std::max({g, lo - vc, vc - (lo + w)});
            }
            bb = std::min(bb, g);
        }
        return bb;
    };

    std::size_t r = static_cast<std::size_t>(
        std::lower_bound(band_t_.begin(), band_t_.end(), p.t,
                         [&](std::int64_t jt, double val) {
                             return std::ldexp(static_cast<double>(jt + 1), -k) < val;
                         }) -
        band_t_.begin());
    std::size_t l = r;
    double best = std::numeric_limits<double>::infinity();
    const double inf = std::numeric_limits<double>::infinity();
    while (true) {
        const double tr = r < band_t_.size() ? tgap_of(r) : inf;
        const double tl = l > 0 ? tgap_of(l - 1) : inf;
        if (tr == inf && tl == inf) break;
        if (std::min(tr, tl) >= best) break;
        if (tr <= tl) {
            best = std::min(best, band_best(r, tr));
            ++r;
        } else {
            best = std::min(best, band_best(l - 1, tl));
            --l;
        }
        if (best == 0.0) return 0.0;
    }
    return best;
}

namespace {

// Max over the level-U lattice vertices of `ba` of the banded minimum
// distance, carrying `floor` as the running maximum so the inner queries can
// abort once they cannot raise it.
std::int64_t sup_units_on_grid(const DyadicBox& ba, const BoxSetIndex& idx, int U,
                               std::int64_t floor) {
    const int d = ba.dim();
    const int sA = U - ba.level;
    const std::int64_t steps = std::int64_t{1} << sA;
    std::vector<std::int64_t> v(static_cast<std::size_t>(d));
    std::vector<std::int64_t> off(static_cast<std::size_t>(d), 0);
    std::int64_t best = floor;
    while (true) {
        for (int i = 0; i < d; ++i) {
            v[static_cast<std::size_t>(i)] =
                (ba.index[static_cast<std::size_t>(i)] << sA) + off[static_cast<std::size_t>(i)];
        }
        const std::int64_t dv = idx.min_dist_units(v, U, best);
        if (dv > best) best = dv;
        int i = d - 1;
        for (; i >= 0; --i) {
            if (++off[static_cast<std::size_t>(i)] <= steps) break;
            off[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return best;
}

}  // namespace

double directed_hausdorff(const BoxSet& a, const BoxSet& b) {
    require(!a.empty() && !b.empty(), "directed_hausdorff: empty set");
    require(a.dim() == b.dim(), "directed_hausdorff: dimension mismatch");
    const int U = std::max(a.level(), b.level()) + 1;
    const int sA = U - a.level();
    const int d = a.dim();
    const double per_axis = static_cast<double>((std::int64_t{1} << sA) + 1);
    if (static_cast<double>(a.size()) * std::pow(per_axis, d) > 5e7) {
        throw std::runtime_error("directed_hausdorff: vertex enumeration too large");
    }
    const BoxSetIndex idx(b);
    std::int64_t best = 0;
    for (const auto& ba : a.members()) {
        best = sup_units_on_grid(ba, idx, U, best);
    }
    return std::ldexp(static_cast<double>(best), -U);
}

double hausdorff(const BoxSet& a, const BoxSet& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double box_sup_dist(const DyadicBox& b, const BoxSetIndex& s) {
    require(!s.empty(), "box_sup_dist: empty set");
    require(b.dim() == s.set().dim(), "box_sup_dist: dimension mismatch");
    const int U = std::max(b.level, s.set().level()) + 1;
    const double per_axis = static_cast<double>((std::int64_t{1} << (U - b.level)) + 1);
    if (std::pow(per_axis, b.dim()) > 5e7) {
        throw std::runtime_error("box_sup_dist: vertex enumeration too large");
    }
    return std::ldexp(static_cast<double>(sup_units_on_grid(b, s, U, 0)), -U);
}

double box_sup_dist(const DyadicBox& b, const BoxSet& s) {
    const BoxSetIndex idx(s);
    return box_sup_dist(b, idx);
}

}  // namespace spancert

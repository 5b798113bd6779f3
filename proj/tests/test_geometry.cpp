#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spancert/geometry.hpp"

using namespace spancert;

namespace {

DyadicBox box(int level, std::vector<std::int64_t> idx) {
    return DyadicBox{level, std::move(idx)};
}

PointTX pt(double t, std::vector<double> x) { return PointTX{t, std::move(x)}; }

// Reference directed Hausdorff by dense lattice sampling.  The exact value
// is attained on the grid of spacing 2^-(max level + 1), so sampling at
// 2^-grid_level with grid_level > max level reproduces it exactly.
double brute_directed_hausdorff(const BoxSet& a, const BoxSet& b, int grid_level) {
    const int s = grid_level - a.level();
    const std::int64_t steps = std::int64_t{1} << s;
    const int d = a.dim();
    double best = 0.0;
    for (const auto& ba : a.members()) {
        std::vector<std::int64_t> off(static_cast<std::size_t>(d), 0);
        while (true) {
            PointTX p;
            p.t = std::ldexp(static_cast<double>((ba.index[0] << s) + off[0]), -grid_level);
            p.x.clear();
            for (int i = 1; i < d; ++i) {
                p.x.push_back(std::ldexp(
                    static_cast<double>((ba.index[static_cast<std::size_t>(i)] << s) +
                                        off[static_cast<std::size_t>(i)]),
                    -grid_level));
            }
            best = std::max(best, dist_point_boxset(p, b));
            int i = d - 1;
            for (; i >= 0; --i) {
                if (++off[static_cast<std::size_t>(i)] <= steps) break;
                off[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }
    return best;
}

double brute_set_dist(const BoxSet& a, const BoxSet& b, int grid_level) {
    const int s = grid_level - a.level();
    const std::int64_t steps = std::int64_t{1} << s;
    const int d = a.dim();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ba : a.members()) {
        std::vector<std::int64_t> off(static_cast<std::size_t>(d), 0);
        while (true) {
            PointTX p;
            p.t = std::ldexp(static_cast<double>((ba.index[0] << s) + off[0]), -grid_level);
            p.x.clear();
            for (int i = 1; i < d; ++i) {
                p.x.push_back(std::ldexp(
                    static_cast<double>((ba.index[static_cast<std::size_t>(i)] << s) +
                                        off[static_cast<std::size_t>(i)]),
                    -grid_level));
            }
            best = std::min(best, dist_point_boxset(p, b));
            int i = d - 1;
            for (; i >= 0; --i) {
                if (++off[static_cast<std::size_t>(i)] <= steps) break;
                off[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }
    return best;
}

BoxSet random_boxset(std::mt19937& rng, int level, int dim, int max_boxes) {
    std::uniform_int_distribution<int> count_dist(1, max_boxes);
    std::uniform_int_distribution<std::int64_t> idx_dist(0, (std::int64_t{1} << level) - 1);
    const int n = count_dist(rng);
    std::vector<DyadicBox> boxes;
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> idx(static_cast<std::size_t>(dim));
        for (auto& j : idx) j = idx_dist(rng);
        boxes.push_back(DyadicBox{level, std::move(idx)});
    }
    return BoxSet::of(level, dim, std::move(boxes));
}

}  // namespace

TEST_CASE("dist_inf basics") {
    CHECK(dist_inf(pt(0.25, {0.5}), pt(0.5, {0.1})) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(dist_inf(pt(0.0, {0.0, 1.0}), pt(1.0, {0.0, 0.25})) == 1.0);
    CHECK(dist_inf(pt(0.5, {0.5}), pt(0.5, {0.5})) == 0.0);
    CHECK_THROWS_AS(dist_inf(pt(0.0, {0.0}), pt(0.0, {0.0, 0.0})), std::invalid_argument);
}

TEST_CASE("dyadic box bounds, center, parent, children") {
    DyadicBox b = box(2, {1, 2});
    CHECK(b.lo(0) == 0.25);
    CHECK(b.hi(0) == 0.5);
    CHECK(b.lo(1) == 0.5);
    CHECK(b.hi(1) == 0.75);
    CHECK(b.center(0) == 0.375);
    CHECK(b.center(1) == 0.625);
    PointTX c = b.center_point();
    CHECK(c.t == 0.375);
    CHECK(c.x == std::vector<double>{0.625});

    DyadicBox p = box(3, {3, 5}).parent();
    CHECK(p.level == 2);
    CHECK(p.index == std::vector<std::int64_t>{1, 2});
    CHECK_THROWS_AS(box(0, {0, 0}).parent(), std::logic_error);

    auto kids = box(0, {0, 0}).children();
    CHECK(kids.size() == 4);
    for (const auto& k : kids) {
        CHECK(k.level == 1);
        CHECK(k.parent() == box(0, {0, 0}));
    }
    auto kids3 = box(1, {1, 0, 1}).children();
    CHECK(kids3.size() == 8);

    DyadicBox capped = box(kMaxLevel, {0, 0});
    CHECK_THROWS_AS(capped.children(), std::runtime_error);
}

TEST_CASE("box containment is closed") {
    DyadicBox b = box(2, {0, 0});
    CHECK(b.contains(pt(0.0, {0.0})));
    CHECK(b.contains(pt(0.25, {0.25})));
    CHECK(b.contains(pt(0.1, {0.2})));
    CHECK_FALSE(b.contains(pt(0.26, {0.1})));
}

TEST_CASE("boxes_touch includes corner contact") {
    CHECK(boxes_touch(box(2, {0, 0}), box(2, {1, 1})));
    CHECK(boxes_touch(box(2, {1, 1}), box(2, {1, 2})));
    CHECK(boxes_touch(box(2, {3, 3}), box(2, {3, 3})));
    CHECK_FALSE(boxes_touch(box(2, {0, 0}), box(2, {2, 0})));
    CHECK_FALSE(boxes_touch(box(2, {0, 0}), box(2, {0, 2})));
    CHECK_THROWS_AS(boxes_touch(box(2, {0, 0}), box(3, {0, 0})), std::invalid_argument);
}

TEST_CASE("BoxSet construction validates, sorts and dedups") {
    BoxSet s = BoxSet::of(2, 2, {box(2, {3, 1}), box(2, {0, 2}), box(2, {3, 1}), box(2, {0, 1})});
    REQUIRE(s.size() == 3);
    CHECK(s[0].index == std::vector<std::int64_t>{0, 1});
    CHECK(s[1].index == std::vector<std::int64_t>{0, 2});
    CHECK(s[2].index == std::vector<std::int64_t>{3, 1});
    CHECK(s.contains_index({0, 2}));
    CHECK(s.position_of({3, 1}) == 2);
    CHECK(s.position_of({2, 2}) == -1);

    CHECK_THROWS_AS(BoxSet::of(2, 2, {box(1, {0, 0})}), std::invalid_argument);
    CHECK_THROWS_AS(BoxSet::of(2, 2, {box(2, {0, 4})}), std::invalid_argument);
    CHECK_THROWS_AS(BoxSet::of(2, 2, {box(2, {0})}), std::invalid_argument);

    BoxSet e = BoxSet::empty_set(3, 2);
    CHECK(e.empty());
    CHECK(e.level() == 3);
    CHECK(e.dim() == 2);
}

TEST_CASE("full grid enumeration") {
    BoxSet g = BoxSet::full_grid(1, 2);
    REQUIRE(g.size() == 4);
    CHECK(g[0].index == std::vector<std::int64_t>{0, 0});
    CHECK(g[3].index == std::vector<std::int64_t>{1, 1});
    CHECK(BoxSet::full_grid(2, 3).size() == 64);
    CHECK_THROWS_AS(BoxSet::full_grid(14, 2), std::runtime_error);
}

TEST_CASE("refine_to_level splits boxes exactly") {
    BoxSet s = BoxSet::of(1, 2, {box(1, {0, 0})});
    BoxSet r = s.refine_to_level(2);
    REQUIRE(r.size() == 4);
    CHECK(r.level() == 2);
    CHECK(r.contains_index({0, 0}));
    CHECK(r.contains_index({0, 1}));
    CHECK(r.contains_index({1, 0}));
    CHECK(r.contains_index({1, 1}));
    CHECK(s.refine_to_level(1).size() == 1);
    CHECK_THROWS_AS(s.refine_to_level(0), std::invalid_argument);
}

TEST_CASE("point-to-box and point-to-set distances") {
    CHECK(dist_point_box(pt(0.5, {0.125}), box(2, {0, 0})) == 0.25);
    CHECK(dist_point_box(pt(0.1, {0.1}), box(2, {0, 0})) == 0.0);
    BoxSet s = BoxSet::of(2, 2, {box(2, {0, 0}), box(2, {3, 3})});
    CHECK(dist_point_boxset(pt(0.5, {0.125}), s) == 0.25);
    CHECK(dist_point_boxset(pt(0.8, {0.8}), s) == 0.0);
    CHECK_THROWS_AS(dist_point_boxset(pt(0.5, {0.5}), BoxSet::empty_set(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("exact set-to-set distance") {
    BoxSet a = BoxSet::of(2, 2, {box(2, {0, 0})});
    BoxSet b = BoxSet::of(2, 2, {box(2, {3, 3})});
    CHECK(dist_boxset_boxset(a, b) == 0.5);
    CHECK(dist_boxset_boxset(a, a) == 0.0);

    // Mixed levels: [0,1/2]^2 vs [3/4,1]^2 gives a gap of 1/4.
    BoxSet coarse = BoxSet::of(1, 2, {box(1, {0, 0})});
    CHECK(dist_boxset_boxset(coarse, b) == 0.25);
    CHECK(dist_boxset_boxset(b, coarse) == 0.25);

    // Touching boxes are at distance zero.
    BoxSet c = BoxSet::of(2, 2, {box(2, {1, 1})});
    CHECK(dist_boxset_boxset(a, c) == 0.0);
    CHECK_THROWS_AS(dist_boxset_boxset(a, BoxSet::empty_set(2, 2)), std::invalid_argument);
}

TEST_CASE("directed Hausdorff on hand-checked unions") {
    BoxSet one = BoxSet::of(1, 2, {box(1, {0, 0})});
    BoxSet full = BoxSet::full_grid(1, 2);
    CHECK(directed_hausdorff(one, full) == 0.0);
    CHECK(directed_hausdorff(full, one) == 0.5);
    CHECK(hausdorff(one, full) == 0.5);
    CHECK(hausdorff(full, full) == 0.0);

    // Two diagonal boxes: the far corners (1,0) and (0,1) sit at 1/2.
    BoxSet diag = BoxSet::of(1, 2, {box(1, {0, 0}), box(1, {1, 1})});
    CHECK(directed_hausdorff(full, diag) == 0.5);
    CHECK(directed_hausdorff(diag, full) == 0.0);

    // Mixed levels.
    BoxSet fine = BoxSet::of(2, 2, {box(2, {3, 3})});
    CHECK(directed_hausdorff(fine, one) == 0.5);
    CHECK(directed_hausdorff(one, fine) == 0.75);
    CHECK_THROWS_AS(directed_hausdorff(one, BoxSet::empty_set(1, 2)), std::invalid_argument);
}

TEST_CASE("box_sup_dist equals the one-box directed Hausdorff") {
    BoxSet b = BoxSet::of(2, 2, {box(2, {3, 3})});
    CHECK(box_sup_dist(box(1, {0, 0}), b) == 0.75);
    CHECK(box_sup_dist(box(2, {3, 3}), b) == 0.0);
    CHECK(box_sup_dist(box(2, {2, 3}), b) == 0.25);
}

TEST_CASE("set distance matches lattice reference on random instances") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 120; ++iter) {
        const int dim = (iter % 3 == 0) ? 3 : 2;
        const int level = 1 + static_cast<int>(rng() % 3u);
        BoxSet a = random_boxset(rng, level, dim, 6);
        BoxSet b = random_boxset(rng, level, dim, 6);
        CHECK(dist_boxset_boxset(a, b) == brute_set_dist(a, b, level + 3));
    }
}

TEST_CASE("directed Hausdorff matches lattice reference on random instances") {
    std::mt19937 rng(20240812);
    for (int iter = 0; iter < 100; ++iter) {
        const int dim = (iter % 3 == 0) ? 3 : 2;
        const int la = 1 + static_cast<int>(rng() % 3u);
        const int lb = 1 + static_cast<int>(rng() % 3u);
        BoxSet a = random_boxset(rng, la, dim, 5);
        BoxSet b = random_boxset(rng, lb, dim, 5);
        const int grid = std::max(la, lb) + 3;
        CHECK(directed_hausdorff(a, b) == brute_directed_hausdorff(a, b, grid));
    }
}

TEST_CASE("band index agrees with plain scans") {
    std::mt19937 rng(20240813);
    std::uniform_real_distribution<double> coord(-0.1, 1.1);
    for (int iter = 0; iter < 60; ++iter) {
        const int dim = (iter % 2 == 0) ? 2 : 3;
        const int level = 1 + static_cast<int>(rng() % 4u);
        BoxSet s = random_boxset(rng, level, dim, 12);
        BoxSetIndex idx(s);

        for (int q = 0; q < 50; ++q) {
            PointTX p;
            p.t = coord(rng);
            p.x.resize(static_cast<std::size_t>(dim - 1));
            for (auto& v : p.x) v = coord(rng);
            CHECK(idx.dist_point(p) == dist_point_boxset(p, s));
        }

        const int U = level + 2;
        std::uniform_int_distribution<std::int64_t> unit_dist(0, std::int64_t{1} << U);
        for (int q = 0; q < 50; ++q) {
            std::vector<std::int64_t> v(static_cast<std::size_t>(dim));
            for (auto& c : v) c = unit_dist(rng);
            PointTX p;
            p.t = std::ldexp(static_cast<double>(v[0]), -U);
            for (int i = 1; i < dim; ++i) {
                p.x.push_back(std::ldexp(static_cast<double>(v[static_cast<std::size_t>(i)]), -U));
            }
            const std::int64_t du = idx.min_dist_units(v, U, -1);
            CHECK(std::ldexp(static_cast<double>(du), -U) == dist_point_boxset(p, s));
        }
    }
}

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spancert/corpus.hpp"
#include "spancert/hilbert.hpp"
#include "spancert/trace.hpp"

using namespace spancert;

TEST_CASE("order-1 cell order, checked by hand") {
    CHECK(hilbert_d2xy(1, 0) == std::array<std::int64_t, 2>{0, 0});
    CHECK(hilbert_d2xy(1, 1) == std::array<std::int64_t, 2>{0, 1});
    CHECK(hilbert_d2xy(1, 2) == std::array<std::int64_t, 2>{1, 1});
    CHECK(hilbert_d2xy(1, 3) == std::array<std::int64_t, 2>{1, 0});
}

TEST_CASE("cell mapping is a bijection with adjacent consecutive steps") {
    for (int order = 1; order <= 6; ++order) {
        const std::int64_t side = std::int64_t{1} << order;
        const std::int64_t steps = side * side;
        std::vector<char> seen(static_cast<std::size_t>(steps), 0);
        std::array<std::int64_t, 2> prev{0, 0};
        for (std::int64_t d = 0; d < steps; ++d) {
            const auto xy = hilbert_d2xy(order, d);
            CHECK(hilbert_xy2d(order, xy[0], xy[1]) == d);
            const auto cell = static_cast<std::size_t>(xy[1] * side + xy[0]);
            CHECK(seen[cell] == 0);
            seen[cell] = 1;
            if (d > 0) {
                const std::int64_t manhattan =
                    std::llabs(xy[0] - prev[0]) + std::llabs(xy[1] - prev[1]);
                CHECK(manhattan == 1);
            }
            prev = xy;
        }
    }
}

TEST_CASE("curve endpoints") {
    for (int order = 1; order <= 6; ++order) {
        SpaceFillingCurve c{order};
        const auto start = curve_eval(c, 0.0);
        const auto finish = curve_eval(c, 1.0);
        CHECK(start[0] == 0.0);
        CHECK(start[1] == 0.0);
        CHECK(finish[0] == 1.0);
        CHECK(finish[1] == 0.0);
    }
}

TEST_CASE("each cell contains its own dyadic curve point") {
    for (int order = 1; order <= 4; ++order) {
        SpaceFillingCurve c{order};
        const std::int64_t side = std::int64_t{1} << order;
        const std::int64_t steps = side * side;
        for (std::int64_t i = 0; i < steps; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(steps);
            const auto p = curve_eval(c, t);
            const auto cell = hilbert_d2xy(order, i);
            const double w = 1.0 / static_cast<double>(side);
            CHECK(p[0] >= static_cast<double>(cell[0]) * w);
            CHECK(p[0] <= static_cast<double>(cell[0] + 1) * w);
            CHECK(p[1] >= static_cast<double>(cell[1]) * w);
            CHECK(p[1] <= static_cast<double>(cell[1] + 1) * w);
        }
    }
}

TEST_CASE("square-root continuity bound") {
    // Exhaustive over the curve's own corner points: the worst ratio
    // |curve(t) - curve(s)|_inf / sqrt(|t - s|) creeps up with the order
    // (2.16, 2.26, 2.36 for orders 3..5) but stays comfortably inside the
    // documented constant 3.
    for (int order = 1; order <= 5; ++order) {
        SpaceFillingCurve c{order};
        const std::int64_t side = std::int64_t{1} << order;
        const std::int64_t steps = side * side;
        std::vector<std::array<std::int64_t, 2>> cells;
        cells.reserve(static_cast<std::size_t>(steps));
        for (std::int64_t i = 0; i < steps; ++i) cells.push_back(hilbert_d2xy(order, i));
        double worst = 0.0;
        for (std::int64_t i = 0; i < steps; ++i) {
            for (std::int64_t j = i + 1; j < steps; ++j) {
                const std::int64_t dx = std::llabs(cells[static_cast<std::size_t>(i)][0] -
                                                   cells[static_cast<std::size_t>(j)][0]);
                const std::int64_t dy = std::llabs(cells[static_cast<std::size_t>(i)][1] -
                                                   cells[static_cast<std::size_t>(j)][1]);
                const double dist = static_cast<double>(std::max(dx, dy)) /
                                    static_cast<double>(side - 1);
                const double gap = static_cast<double>(j - i) / static_cast<double>(steps);
                worst = std::max(worst, dist / std::sqrt(gap));
            }
        }
        CHECK(worst <= 2.5);
    }

    // Random pairs, including interpolated parameters, against the documented
    // constant.
    std::mt19937 rng(20240816);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int order : {1, 3, 6}) {
        SpaceFillingCurve c{order};
        for (int trial = 0; trial < 100000; ++trial) {
            const double t = unif(rng);
            double s = unif(rng);
            if (trial % 3 == 0) {
                // Bias toward nearby pairs, where the bound is tightest.
                s = std::clamp(t + (unif(rng) - 0.5) * 0.01, 0.0, 1.0);
            }
            const auto p = curve_eval(c, t);
            const auto q = curve_eval(c, s);
            const double dist =
                std::max(std::fabs(p[0] - q[0]), std::fabs(p[1] - q[1]));
            CHECK(dist <=
                  SpaceFillingCurve::kHolderConstant * std::sqrt(std::fabs(t - s)) + 1e-12);
        }
    }
}

TEST_CASE("lift of a parameter-independent family ignores t") {
    Param2Oracle base;
    base.name = "flat";
    base.dim = 1;
    base.eval = [](double, double, std::span<const double> x, std::span<double> out) {
        out[0] = x[0];
    };
    base.modulus = [](double rho) { return rho; };
    base.modulus_desc = "rho";

    Oracle lifted = lift(base, SpaceFillingCurve{3});
    CHECK(lifted.dim == 1);
    for (int i = 0; i <= 16; ++i) {
        const double t = static_cast<double>(i) / 16.0;
        CHECK(lifted.eval1(t, 0.375) == 0.375);
    }
}

TEST_CASE("lifted bilinear family is fixed exactly on the curve's v-track") {
    Oracle lifted = lift(bilinear_oracle(), SpaceFillingCurve{4});
    for (int i = 0; i <= 64; ++i) {
        const double t = static_cast<double>(i) / 64.0;
        const auto uv = curve_eval(SpaceFillingCurve{4}, t);
        const double x = uv[1];
        CHECK(std::fabs(lifted.eval1(t, x) - x) <= 1e-15);
    }
}

TEST_CASE("lifted modulus is sound on sampled pairs") {
    Oracle lifted = lift(bilinear_oracle(), SpaceFillingCurve{3});
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20000; ++trial) {
        const double t1 = unif(rng), x1 = unif(rng);
        const double t2 = unif(rng), x2 = unif(rng);
        const double rho = std::max(std::fabs(t1 - t2), std::fabs(x1 - x2));
        const double diff = std::fabs(lifted.eval1(t1, x1) - lifted.eval1(t2, x2));
        CHECK(diff <= lifted.modulus(rho) + 1e-9);
    }
}

TEST_CASE("pushforward maps t-columns to curve cells") {
    SpaceFillingCurve c1{1};

    // One column at the matching depth: the first quarter of [0,1] is the
    // curve's first step, which sits in cell (0,0).
    BoxSet first = BoxSet::of(2, 2, {DyadicBox{2, {0, 3}}});
    BoxSet cells = pushforward(c1, first);
    REQUIRE(cells.size() == 1);
    CHECK(cells.members()[0].index == std::vector<std::int64_t>{0, 0});
    CHECK(cells.level() == 1);

    // Half the columns cover the left half of the square.
    BoxSet half = BoxSet::of(2, 2, {DyadicBox{2, {0, 0}}, DyadicBox{2, {1, 2}}});
    BoxSet half_cells = pushforward(c1, half);
    REQUIRE(half_cells.size() == 2);
    CHECK(half_cells.members()[0].index == std::vector<std::int64_t>{0, 0});
    CHECK(half_cells.members()[1].index == std::vector<std::int64_t>{0, 1});

    // Deeper sets group several columns into one curve step.
    BoxSet deep = BoxSet::of(4, 2,
                             {DyadicBox{4, {0, 0}}, DyadicBox{4, {1, 5}},
                              DyadicBox{4, {2, 9}}, DyadicBox{4, {3, 1}}});
    BoxSet deep_cells = pushforward(c1, deep);
    REQUIRE(deep_cells.size() == 1);
    CHECK(deep_cells.members()[0].index == std::vector<std::int64_t>{0, 0});

    // All columns cover all cells, at several orders.
    for (int order = 1; order <= 3; ++order) {
        SpaceFillingCurve c{order};
        BoxSet all_columns = BoxSet::full_grid(2 * order, 1);
        BoxSet all_cells = pushforward(c, all_columns);
        CHECK(all_cells.members() == BoxSet::full_grid(order, 2).members());
    }

    // A set shallower than the curve cannot be pushed forward.
    CHECK_THROWS_AS(pushforward(SpaceFillingCurve{2}, first), std::invalid_argument);
}

TEST_CASE("tracing a lifted family spans and covers every cell") {
    Oracle lifted = lift(bilinear_oracle(), SpaceFillingCurve{2});
    TraceResult tr = trace(lifted, {3, 6, true});
    REQUIRE(tr.outcome == TraceOutcome::SpanningCertified);
    BoxSet cells = pushforward(SpaceFillingCurve{2}, tr.levels.back().boxes);
    CHECK(cells.size() == 16);
}

TEST_CASE("curve input validation") {
    CHECK_THROWS_AS(curve_eval(SpaceFillingCurve{0}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(curve_eval(SpaceFillingCurve{15}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(curve_eval(SpaceFillingCurve{2}, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(curve_eval(SpaceFillingCurve{2}, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_d2xy(2, 16), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_d2xy(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_xy2d(2, 4, 0), std::invalid_argument);
}

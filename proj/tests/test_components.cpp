#include <doctest.h>

#include <random>
#include <vector>

#include "spancert/components.hpp"

using namespace spancert;

namespace {

DyadicBox box(int level, std::vector<std::int64_t> idx) {
    return DyadicBox{level, std::move(idx)};
}

// Reference equivalence via boolean transitive closure of the contact matrix.
std::vector<std::vector<bool>> brute_closure(const BoxSet& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) reach[i][j] = boxes_touch(s[i], s[j]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

}  // namespace

TEST_CASE("diagonal chain is one spanning component") {
    BoxSet s = BoxSet::of(2, 2, {box(2, {0, 0}), box(2, {1, 1}), box(2, {2, 2}), box(2, {3, 3})});
    ComponentLabeling cl = label_components(s);
    REQUIRE(cl.component_count() == 1);
    const ComponentInfo& c = cl.components()[0];
    CHECK(c.touches_t0);
    CHECK(c.touches_t1);
    CHECK(c.spanning);
    CHECK(c.box_count == 4);
    CHECK(cl.any_spanning());
    CHECK(cl.spanning_ids() == std::vector<std::int32_t>{0});
    CHECK(cl.spanning_union().size() == 4);
}

TEST_CASE("gap splits components") {
    BoxSet s = BoxSet::of(2, 2, {box(2, {0, 0}), box(2, {1, 1}), box(2, {3, 3})});
    ComponentLabeling cl = label_components(s);
    REQUIRE(cl.component_count() == 2);
    CHECK(cl.components()[0].touches_t0);
    CHECK_FALSE(cl.components()[0].touches_t1);
    CHECK_FALSE(cl.components()[0].spanning);
    CHECK(cl.components()[1].touches_t1);
    CHECK_FALSE(cl.any_spanning());
    CHECK(cl.spanning_union().empty());
    CHECK(cl.face_union(false).size() == 2);
    CHECK(cl.face_union(true).size() == 1);
}

TEST_CASE("labels appear in lex order of first member") {
    BoxSet s = BoxSet::of(2, 2, {box(2, {0, 0}), box(2, {0, 3}), box(2, {3, 0}), box(2, {3, 3})});
    ComponentLabeling cl = label_components(s);
    REQUIRE(cl.component_count() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(cl.label(i) == static_cast<std::int32_t>(i));
}

TEST_CASE("level 0 single box spans trivially") {
    BoxSet s = BoxSet::of(0, 2, {box(0, {0, 0})});
    ComponentLabeling cl = label_components(s);
    REQUIRE(cl.component_count() == 1);
    CHECK(cl.components()[0].touches_t0);
    CHECK(cl.components()[0].touches_t1);
    CHECK(cl.components()[0].spanning);
}

TEST_CASE("empty set labels cleanly") {
    ComponentLabeling cl = label_components(BoxSet::empty_set(3, 2));
    CHECK(cl.component_count() == 0);
    CHECK_FALSE(cl.any_spanning());
    CHECK(cl.spanning_union().empty());
}

TEST_CASE("labeling matches transitive closure on random sets") {
    std::mt19937 rng(20240814);
    for (int iter = 0; iter < 80; ++iter) {
        const int dim = (iter % 3 == 0) ? 3 : 2;
        const int level = 2 + static_cast<int>(rng() % 3u);
        std::uniform_int_distribution<std::int64_t> idx(0, (std::int64_t{1} << level) - 1);
        std::uniform_int_distribution<int> count(1, 120);
        std::vector<DyadicBox> boxes;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            std::vector<std::int64_t> v(static_cast<std::size_t>(dim));
            for (auto& j : v) j = idx(rng);
            boxes.push_back(DyadicBox{level, std::move(v)});
        }
        BoxSet s = BoxSet::of(level, dim, std::move(boxes));
        ComponentLabeling cl = label_components(s);
        auto reach = brute_closure(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                CHECK((cl.label(i) == cl.label(j)) == reach[i][j]);
            }
        }

        // Structural invariants of the per-component summaries.
        const std::int64_t cols = std::int64_t{1} << level;
        std::size_t total = 0;
        for (const auto& c : cl.components()) {
            total += c.box_count;
            // A connected union projects onto an interval of columns, so
            // touching both faces is the same as spanning.
            CHECK(c.spanning == (c.touches_t0 && c.touches_t1));
            bool saw0 = false;
            bool saw1 = false;
            for (std::int64_t j = 0; j < cols; ++j) {
                const bool hit =
                    (c.column_mask[static_cast<std::size_t>(j / 64)] >> (j % 64)) & 1u;
                saw0 = saw0 || (hit && j == 0);
                saw1 = saw1 || (hit && j == cols - 1);
            }
            CHECK(saw0 == c.touches_t0);
            CHECK(saw1 == c.touches_t1);
        }
        CHECK(total == s.size());
    }
}

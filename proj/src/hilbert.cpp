#include "spancert/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spancert {

namespace {

void check_order(int order) {
    if (order < 1 || order > kMaxCurveOrder) {
        throw std::invalid_argument("curve order must be in [1, " +
                                    std::to_string(kMaxCurveOrder) + "]");
    }
}

// Quadrant transform shared by both directions of the cell mapping.
void rotate_quadrant(std::int64_t s, std::int64_t& x, std::int64_t& y,
                     std::int64_t rx, std::int64_t ry) {
    if (ry == 0) {
        if (rx == 1) {
            x = s - 1 - x;
            y = s - 1 - y;
        }
        std::swap(x, y);
    }
}

}  // namespace

double SpaceFillingCurve::modulus(double rho) const {
    return kHolderConstant * std::sqrt(rho);
}

std::array<std::int64_t, 2> hilbert_d2xy(int order, std::int64_t d) {
    check_order(order);
    const std::int64_t side = std::int64_t{1} << order;
    if (d < 0 || d >= side * side) {
        throw std::invalid_argument("curve step out of range");
    }
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t t = d;
    for (std::int64_t s = 1; s < side; s <<= 1) {
        const std::int64_t rx = (t >> 1) & 1;
        const std::int64_t ry = (t ^ rx) & 1;
        rotate_quadrant(s, x, y, rx, ry);
        x += s * rx;
        y += s * ry;
        t >>= 2;
    }
    return {x, y};
}

std::int64_t hilbert_xy2d(int order, std::int64_t x, std::int64_t y) {
    check_order(order);
    const std::int64_t side = std::int64_t{1} << order;
    if (x < 0 || x >= side || y < 0 || y >= side) {
        throw std::invalid_argument("cell coordinates out of range");
    }
    std::int64_t d = 0;
    for (std::int64_t s = side >> 1; s > 0; s >>= 1) {
        const std::int64_t rx = (x & s) ? 1 : 0;
        const std::int64_t ry = (y & s) ? 1 : 0;
        d += s * s * ((3 * rx) ^ ry);
        rotate_quadrant(s, x, y, rx, ry);
    }
    return d;
}

std::array<double, 2> curve_eval(const SpaceFillingCurve& c, double t) {
    check_order(c.order);
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("curve parameter outside [0,1]");
    }
    const std::int64_t side = std::int64_t{1} << c.order;
    const std::int64_t steps = side * side;
    // Exact when t is a multiple of 1/steps: both factors are powers of two.
    const double scaled = t * static_cast<double>(steps);
    std::int64_t i = static_cast<std::int64_t>(scaled);
    if (i >= steps) i = steps - 1;
    const double frac = scaled - static_cast<double>(i);

    const double denom = static_cast<double>(side - 1);
    const auto a = hilbert_d2xy(c.order, i);
    const auto b = hilbert_d2xy(c.order, std::min(i + 1, steps - 1));
    const double ax = static_cast<double>(a[0]) / denom;
    const double ay = static_cast<double>(a[1]) / denom;
    const double bx = static_cast<double>(b[0]) / denom;
    const double by = static_cast<double>(b[1]) / denom;
    return {ax + frac * (bx - ax), ay + frac * (by - ay)};
}

Oracle lift(const Param2Oracle& base, const SpaceFillingCurve& c) {
    check_order(c.order);
    Oracle o;
    o.name = base.name + "-hilbert" + std::to_string(c.order);
    o.dim = base.dim;
    o.x_domain = unit_domain(base.dim);
    const auto base_eval = base.eval;
    const SpaceFillingCurve curve = c;
    o.eval = [base_eval, curve](double t, std::span<const double> x,
                                std::span<double> out) {
        const auto uv = curve_eval(curve, t);
        base_eval(uv[0], uv[1], x, out);
    };
    const auto base_modulus = base.modulus;
    o.modulus = [base_modulus, curve](double rho) {
        return base_modulus(std::max(curve.modulus(rho), rho));
    };
    o.modulus_desc =
        base.modulus_desc + " composed with max(3*sqrt(rho), rho)";
    return o;
}

BoxSet pushforward(const SpaceFillingCurve& c, const BoxSet& component) {
    check_order(c.order);
    if (component.dim() < 1) {
        throw std::invalid_argument("pushforward needs a nonempty dimension");
    }
    const int shift = component.level() - 2 * c.order;
    if (shift < 0) {
        throw std::invalid_argument(
            "pushforward needs set level >= 2 * curve order; trace deeper");
    }
    std::vector<DyadicBox> cells;
    cells.reserve(component.size());
    for (const auto& b : component.members()) {
        const std::int64_t step = b.index[0] >> shift;
        const auto uv = hilbert_d2xy(c.order, step);
        cells.push_back(DyadicBox{c.order, {uv[0], uv[1]}});
    }
    return BoxSet::of(c.order, 2, std::move(cells));
}

}  // namespace spancert

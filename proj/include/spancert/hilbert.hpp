#pragma once

#include <array>
#include <cstdint>

#include "spancert/geometry.hpp"
#include "spancert/oracle.hpp"

namespace spancert {

// Hilbert-curve machinery: a square-filling parameter substitution that turns
// a two-parameter family into a one-parameter family the tracer can consume.
// Base-2 construction so the curve's cell structure lines up exactly with the
// dyadic grid.

// 2 * order must stay within the grid level cap, and 4^order must stay well
// inside the exact range of a double.
inline constexpr int kMaxCurveOrder = 14;

struct SpaceFillingCurve {
    int order = 1;  // the curve fills the 2^order x 2^order cell grid

    // Exhaustive corner-point scans put the worst ratio
    // |curve(t) - curve(s)|_inf / sqrt(|t - s|) near 2.4; we document the
    // conventional constant 3, which holds with margin.
    static constexpr double kHolderConstant = 3.0;

    double modulus(double rho) const;
};

// Classic reflect-and-rotate integer cell mapping: curve step d (in
// [0, 4^order)) to grid cell (x, y), and its inverse. The two are mutually
// inverse bijections on the cell grid.
std::array<std::int64_t, 2> hilbert_d2xy(int order, std::int64_t d);
std::int64_t hilbert_xy2d(int order, std::int64_t x, std::int64_t y);

// The curve point at parameter t in [0,1]. At the dyadic parameters i/4^order
// this is the cell-corner lattice point d2xy(i) / (2^order - 1), computed
// exactly; between them it interpolates linearly. Starts at (0,0), ends at
// (1,0).
std::array<double, 2> curve_eval(const SpaceFillingCurve& c, double t);

// Compose a two-parameter family with the curve. The result evaluates
// base(curve(t), x) and carries the modulus rho -> base_modulus(max(
// 3*sqrt(rho), rho)): square-root in t because that is all a square-filling
// curve can offer.
Oracle lift(const Param2Oracle& base, const SpaceFillingCurve& c);

// Which (u, v) parameter cells the t-columns of a traced set land in, as a
// dim-2 BoxSet at level c.order. Exact integer computation; requires the set
// level to be at least 2 * order so each column fits inside one curve step.
BoxSet pushforward(const SpaceFillingCurve& c, const BoxSet& component);

}  // namespace spancert

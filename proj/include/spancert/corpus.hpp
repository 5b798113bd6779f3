#pragma once

#include <cstdint>
#include <vector>

#include "spancert/oracle.hpp"

namespace spancert {

// Deepest supported Cantor construction; 3^18 still fits comfortably in the
// exact integer range used for the interval endpoints.
inline constexpr int kMaxCantorDepth = 18;

// Damped oscillation family on the natural domain X = [-1, 1]:
//   f(0, x) = x,   f(t, x) = (1-t) x + t sin(1/t)  for t > 0.
// Its fixed points are the whole slice at t = 0 together with the graph
// x = sin(1/t), i.e. the closed topologist's sine curve.
double oscillator_natural(double t, double x);

// The same family carried onto X = [0, 1] by the affine change of variable
// x = (xn + 1) / 2.  Declared modulus 3 sqrt(rho) + 2 rho.
Oracle oscillator_oracle();

// One-dimensional map whose fixed points are the depth-`depth` approximation
// of the Cantor middle-thirds set: inside a removed middle third (a, b) it
// returns x + (x - a)(b - x), elsewhere x itself.
double cantor_g(double x, int depth);

// An interval with exact ternary-rational endpoints num_lo/den .. num_hi/den.
struct CantorInterval {
    std::int64_t num_lo = 0;
    std::int64_t num_hi = 0;
    std::int64_t den = 1;  // 3^depth
};

// The middle thirds removed during the first `depth` stages, scaled to the
// common denominator 3^depth, in increasing order.
std::vector<CantorInterval> cantor_removed_intervals(int depth);

// The 2^depth closed segments that survive `depth` stages, each of width
// exactly 3^-depth, in increasing order.
std::vector<CantorInterval> cantor_segments(int depth);

// Parameter-independent family f(t, x) = cantor_g(x, depth); its fixed-point
// set is [0,1] x (depth-approximate Cantor set).  Lipschitz modulus 4/3 rho.
Oracle cantor_oracle(int depth);

Oracle identity_oracle();                  // f(t, x) = x
Oracle constant_oracle(double c);          // f(t, x) = c
Oracle linear_homotopy_oracle(double c);   // f(t, x) = (1-t) x + t c

// The standard test corpus used by the command line tool and the tests.
std::vector<Oracle> corpus();

// Two-parameter family f((u, v), x) = (1-u) x + u v.
Param2Oracle bilinear_oracle();
std::vector<Param2Oracle> param2_corpus();

// Look up a corpus oracle by name; "cantor" honors the depth argument.
// Throws std::invalid_argument for unknown names.
Oracle find_oracle(const std::string& name, int cantor_depth);

}  // namespace spancert

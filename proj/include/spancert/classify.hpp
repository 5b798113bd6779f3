#pragma once

#include <vector>

#include "spancert/geometry.hpp"
#include "spancert/oracle.hpp"

namespace spancert {

enum class Verdict { Excluded, Candidate };

// max_i |f(t, x)_i - x_i| at a point; throws when the oracle leaves [0,1]^n
// or returns a non-finite value.
double residual(const Oracle& o, const PointTX& p);

// Exclusion threshold for a box at `level`: modulus(r) + r with r = 2^-(level+1)
// the L-infinity radius of the box around its center.
double exclusion_threshold(const Oracle& o, int level);

// One-sided center test.  If the center residual exceeds the threshold, no
// point of the box can be fixed (the residual can fall by at most
// modulus(r) + r anywhere in the box), so the box is Excluded.  Otherwise it
// stays Candidate; the test never claims a fixed point exists.
Verdict classify_box(const Oracle& o, const DyadicBox& b, double* residual_out = nullptr);

struct LevelBuild {
    BoxSet boxes;                   // candidate boxes in lex order
    std::vector<double> residuals;  // center residuals, aligned with boxes
};

// All candidate boxes at `level` for the oracle (dimension n gives boxes of
// dimension n+1).  Without a restriction the full grid is scanned, guarded
// against more than 2^26 boxes; with one, only children of the restriction
// (which must sit one level up) are considered.
LevelBuild build_level(const Oracle& o, int level, const BoxSet* restrict_to = nullptr);

}  // namespace spancert

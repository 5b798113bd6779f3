#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spancert {

// A continuous family of self-maps f : [0,1] x X -> X with X a product of
// intervals inside [0,1]^n.  `modulus` is a declared modulus of continuity:
// whenever two inputs are within rho in the L-infinity metric on (t, x),
// the outputs are within modulus(rho).  Everything downstream trusts only
// pointwise evaluations plus this modulus.
struct Oracle {
    std::string name;
    int dim = 1;  // number of spatial coordinates n
    std::function<void(double t, std::span<const double> x, std::span<double> out)> eval;
    std::function<double(double)> modulus;
    std::string modulus_desc;
    std::vector<std::array<double, 2>> x_domain;  // per-axis closed intervals

    double eval1(double t, double x) const {
        if (dim != 1) throw std::logic_error("eval1: oracle is not one-dimensional");
        double out = 0.0;
        eval(t, std::span<const double>(&x, 1), std::span<double>(&out, 1));
        return out;
    }
};

// Same contract with a two-dimensional parameter square [0,1]^2 in place of
// the segment [0,1]; the modulus covers (u, v, x) jointly.
struct Param2Oracle {
    std::string name;
    int dim = 1;
    std::function<void(double u, double v, std::span<const double> x, std::span<double> out)>
        eval;
    std::function<double(double)> modulus;
    std::string modulus_desc;
};

inline std::vector<std::array<double, 2>> unit_domain(int dim) {
    return std::vector<std::array<double, 2>>(static_cast<std::size_t>(dim), {0.0, 1.0});
}

}  // namespace spancert

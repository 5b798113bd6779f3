#include "spancert/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace spancert {

namespace {

void check_depth(int depth) {
    if (depth < 0 || depth > kMaxCantorDepth) {
        throw std::invalid_argument("cantor depth out of range");
    }
}

std::string short_num(double c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", c);
    return buf;
}

}  // namespace

double oscillator_natural(double t, double x) {
    if (t == 0.0) return x;
    return (1.0 - t) * x + t * std::sin(1.0 / t);
}

Oracle oscillator_oracle() {
    Oracle o;
    o.name = "oscillator";
    o.dim = 1;
    o.x_domain = unit_domain(1);
    o.eval = [](double t, std::span<const double> x, std::span<double> out) {
        if (t == 0.0) {
            out[0] = x[0];
            return;
        }
        const double xn = 2.0 * x[0] - 1.0;
        const double fn = (1.0 - t) * xn + t * std::sin(1.0 / t);
        out[0] = std::clamp((fn + 1.0) / 2.0, 0.0, 1.0);
    };
    // t sin(1/t) is 1/2-Hoelder with constant 2 (+rho); halving by the change
    // of variable and adding the x and t-times-x terms stays below this.
    o.modulus = [](double rho) { return 3.0 * std::sqrt(rho) + 2.0 * rho; };
    o.modulus_desc = "3*sqrt(rho) + 2*rho";
    return o;
}

double cantor_g(double x, int depth) {
    check_depth(depth);
    std::int64_t lo = 0;   // current interval [lo/den, (lo+1)/den]
    std::int64_t den = 1;  // 3^d
    for (int d = 0; d < depth; ++d) {
        const std::int64_t lo3 = 3 * lo;
        den *= 3;
        const double a = static_cast<double>(lo3 + 1) / static_cast<double>(den);
        const double b = static_cast<double>(lo3 + 2) / static_cast<double>(den);
        if (a < x && x < b) return x + (x - a) * (b - x);
        lo = (x <= a) ? lo3 : lo3 + 2;
    }
    return x;  // inside a surviving segment
}

std::vector<CantorInterval> cantor_removed_intervals(int depth) {
    check_depth(depth);
    std::int64_t den = 1;
    for (int d = 0; d < depth; ++d) den *= 3;
    std::vector<CantorInterval> removed;
    std::vector<std::int64_t> seg = {0};  // left numerators, current denominator 3^d
    std::int64_t scale = den;             // 3^(depth - d)
    for (int d = 0; d < depth; ++d) {
        scale /= 3;
        std::vector<std::int64_t> next;
        next.reserve(2 * seg.size());
        for (std::int64_t c : seg) {
            next.push_back(3 * c);
            next.push_back(3 * c + 2);
            removed.push_back({(3 * c + 1) * scale, (3 * c + 2) * scale, den});
        }
        seg = std::move(next);
    }
    std::sort(removed.begin(), removed.end(),
              [](const CantorInterval& a, const CantorInterval& b) {
                  return a.num_lo < b.num_lo;
              });
    return removed;
}

std::vector<CantorInterval> cantor_segments(int depth) {
    check_depth(depth);
    std::int64_t den = 1;
    std::vector<std::int64_t> seg = {0};
    for (int d = 0; d < depth; ++d) {
        den *= 3;
        std::vector<std::int64_t> next;
        next.reserve(2 * seg.size());
        for (std::int64_t c : seg) {
            next.push_back(3 * c);
            next.push_back(3 * c + 2);
        }
        seg = std::move(next);
    }
    std::vector<CantorInterval> out;
    out.reserve(seg.size());
    for (std::int64_t c : seg) out.push_back({c, c + 1, den});
    return out;
}

Oracle cantor_oracle(int depth) {
    check_depth(depth);
    Oracle o;
    o.name = "cantor-d" + std::to_string(depth);
    o.dim = 1;
    o.x_domain = unit_domain(1);
    o.eval = [depth](double, std::span<const double> x, std::span<double> out) {
        out[0] = std::clamp(cantor_g(x[0], depth), 0.0, 1.0);
    };
    // Inside a removed third of width w the slope is 1 + (a + b - 2x), which
    // stays within 1 +- w <= 1 +- 1/3; there is no t dependence.
    o.modulus = [](double rho) { return (4.0 / 3.0) * rho; };
    o.modulus_desc = "(4/3)*rho";
    return o;
}

Oracle identity_oracle() {
    Oracle o;
    o.name = "identity";
    o.dim = 1;
    o.x_domain = unit_domain(1);
    o.eval = [](double, std::span<const double> x, std::span<double> out) { out[0] = x[0]; };
    o.modulus = [](double rho) { return rho; };
    o.modulus_desc = "rho";
    return o;
}

Oracle constant_oracle(double c) {
    if (c < 0.0 || c > 1.0) throw std::invalid_argument("constant_oracle: value outside [0,1]");
    Oracle o;
    o.name = "const-" + short_num(c);
    o.dim = 1;
    o.x_domain = unit_domain(1);
    o.eval = [c](double, std::span<const double>, std::span<double> out) { out[0] = c; };
    o.modulus = [](double) { return 0.0; };
    o.modulus_desc = "0";
    return o;
}

Oracle linear_homotopy_oracle(double c) {
    if (c < 0.0 || c > 1.0) {
        throw std::invalid_argument("linear_homotopy_oracle: value outside [0,1]");
    }
    Oracle o;
    o.name = "linear-" + short_num(c);
    o.dim = 1;
    o.x_domain = unit_domain(1);
    o.eval = [c](double t, std::span<const double> x, std::span<double> out) {
        out[0] = std::clamp((1.0 - t) * x[0] + t * c, 0.0, 1.0);
    };
    o.modulus = [](double rho) { return 2.0 * rho; };
    o.modulus_desc = "2*rho";
    return o;
}

std::vector<Oracle> corpus() {
    std::vector<Oracle> v;
    v.push_back(identity_oracle());
    v.push_back(constant_oracle(0.25));
    v.push_back(constant_oracle(0.5));
    v.push_back(constant_oracle(0.75));
    v.push_back(linear_homotopy_oracle(0.25));
    v.push_back(linear_homotopy_oracle(0.5));
    v.push_back(oscillator_oracle());
    for (int depth = 4; depth <= 8; ++depth) v.push_back(cantor_oracle(depth));
    return v;
}

Param2Oracle bilinear_oracle() {
    Param2Oracle o;
    o.name = "bilinear";
    o.dim = 1;
    o.eval = [](double u, double v, std::span<const double> x, std::span<double> out) {
        out[0] = std::clamp((1.0 - u) * x[0] + u * v, 0.0, 1.0);
    };
    // (1-u)|dx| + u|dv| <= rho and |du| |x - v| <= rho.
    o.modulus = [](double rho) { return 2.0 * rho; };
    o.modulus_desc = "2*rho";
    return o;
}

std::vector<Param2Oracle> param2_corpus() { return {bilinear_oracle()}; }

Oracle find_oracle(const std::string& name, int cantor_depth) {
    if (name == "cantor") return cantor_oracle(cantor_depth);
    for (auto& o : corpus()) {
        if (o.name == name) return o;
    }
    throw std::invalid_argument("unknown oracle: " + name);
}

}  // namespace spancert

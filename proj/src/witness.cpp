#include "spancert/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spancert/classify.hpp"
#include "spancert/sampling.hpp"

namespace spancert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double domain_gap(const std::vector<std::array<double, 2>>& dom,
                  const std::vector<double>& x) {
    double m = 0.0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        m = std::max({m, dom[i][0] - x[i], x[i] - dom[i][1]});
    }
    return m;
}

double domain_gap_box(const std::vector<std::array<double, 2>>& dom, const DyadicBox& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const int c = static_cast<int>(i) + 1;
        m = std::max({m, dom[i][0] - b.hi(c), b.lo(c) - dom[i][1]});
    }
    return m;
}

// Descendants of the claimed set two levels down that lie entirely inside
// the margin neighbourhood of one side: sup_{p in box} d(p, side) < margin,
// evaluated exactly on the half-step lattice.
BoxSet restrict_to_side(const BoxSet& claimed, const BoxSet& side, double margin) {
    const int fine_level = claimed.level() + 2;
    if (side.empty()) return BoxSet::empty_set(fine_level, claimed.dim());
    const BoxSetIndex side_index(side);
    BoxSet fine = claimed.refine_to_level(fine_level);
    std::vector<DyadicBox> keep;
    for (const auto& b : fine.members()) {
        if (box_sup_dist(b, side_index) < margin) keep.push_back(b);
    }
    return BoxSet::of(fine_level, claimed.dim(), std::move(keep));
}

}  // namespace

double choose_epsilon(int level) { return std::ldexp(1.0, -(level + 2)); }

SeparationWitness::SeparationWitness(Oracle oracle, Separation sep, const BoxSet& claimed)
    : oracle_(std::move(oracle)), sep_(std::move(sep)), claimed_(claimed) {
    if (claimed_.level() != sep_.level()) {
        throw std::invalid_argument("SeparationWitness: claimed set level mismatch");
    }
    if (claimed_.level() > kMaxLevel - 2) {
        throw std::invalid_argument("SeparationWitness: level too deep to subdivide");
    }
    if (claimed_.dim() != oracle_.dim + 1) {
        throw std::invalid_argument("SeparationWitness: claimed set dimension mismatch");
    }
    const int k = claimed_.level();
    epsilon_ = choose_epsilon(k);
    tau_ = oracle_.modulus(epsilon_) + epsilon_;

    c0_index_ = BoxSetIndex(restrict_to_side(claimed_, sep_.a0(), sep_.margin()));
    c1_index_ = BoxSetIndex(restrict_to_side(claimed_, sep_.a1(), sep_.margin()));

    // delta = exact distance between the full target sets; the two domain
    // faces alone contribute 1.
    double d = 1.0;
    const auto& dom = oracle_.x_domain;
    for (const auto& b : claimed_in_o1().members()) {
        d = std::min(d, std::max(b.lo(0), domain_gap_box(dom, b)));
    }
    for (const auto& b : claimed_in_o0().members()) {
        d = std::min(d, std::max(1.0 - b.hi(0), domain_gap_box(dom, b)));
    }
    if (!claimed_in_o0().empty() && !claimed_in_o1().empty()) {
        d = std::min(d, dist_boxset_boxset(claimed_in_o0(), claimed_in_o1()));
    }
    delta_ = d;
    tau_g_ = std::min(0.5, 2.0 * tau_ / delta_);
}

double SeparationWitness::dist_lo(const PointTX& p) const {
    double d = std::max(p.t, domain_gap(oracle_.x_domain, p.x));
    if (!c0_index_.empty()) d = std::min(d, c0_index_.dist_point(p));
    return d;
}

double SeparationWitness::dist_hi(const PointTX& p) const {
    double d = std::max(1.0 - p.t, domain_gap(oracle_.x_domain, p.x));
    if (!c1_index_.empty()) d = std::min(d, c1_index_.dist_point(p));
    return d;
}

double SeparationWitness::g(const PointTX& p) const {
    const double dlo = dist_lo(p);
    if (dlo == 0.0) return 1.0;
    const double dhi = dist_hi(p);
    if (dhi == 0.0) return -1.0;
    return (dhi - dlo) / (dhi + dlo);
}

PointTX SeparationWitness::apply(const PointTX& p) const {
    PointTX out;
    out.x.resize(p.x.size());
    oracle_.eval(p.t, p.x, out.x);
    out.t = p.t + epsilon_ * g(p);
    return out;
}

WitnessReport verify_witness(const SeparationWitness& w, std::uint64_t samples,
                             std::uint64_t seed) {
    WitnessReport rep;
    rep.samples = samples;
    rep.seed = seed;
    rep.epsilon = w.epsilon();
    rep.tau = w.tau();
    rep.tau_g = w.tau_g();
    rep.delta = w.delta();
    rep.min_displacement_g1 = std::numeric_limits<double>::quiet_NaN();
    rep.max_displacement_g1 = std::numeric_limits<double>::quiet_NaN();
    rep.min_claimed_displacement = std::numeric_limits<double>::quiet_NaN();
    rep.min_range_slack = kInf;

    const Oracle& o = w.oracle();
    const BoxSetIndex claimed_index(w.claimed());
    for (std::uint64_t i = 0; i < samples; ++i) {
        const PointTX p = domain_sample(i, seed, o.dim, o.x_domain);
        const double res = residual(o, p);
        const double gg = w.g(p);
        const double t_moved = p.t + w.epsilon() * gg;
        const double displacement = std::max(std::fabs(t_moved - p.t), res);

        rep.min_range_slack = std::min(rep.min_range_slack, std::min(t_moved, 1.0 - t_moved));
        if (std::fabs(gg) == 1.0) {
            rep.g_exact_one_count += 1;
            if (rep.g_exact_one_count == 1) {
                rep.min_displacement_g1 = displacement;
                rep.max_displacement_g1 = displacement;
            } else {
                rep.min_displacement_g1 = std::min(rep.min_displacement_g1, displacement);
                rep.max_displacement_g1 = std::max(rep.max_displacement_g1, displacement);
            }
        }
        if (!w.claimed().empty() && claimed_index.dist_point(p) == 0.0) {
            rep.claimed_sample_count += 1;
            rep.min_claimed_displacement =
                rep.claimed_sample_count == 1
                    ? displacement
                    : std::min(rep.min_claimed_displacement, displacement);
        }

        if (res > w.tau()) continue;
        rep.approx_fixed_count += 1;
        const bool covered = w.sep().in_o0(p) || w.sep().in_o1(p);
        const bool decisive = std::fabs(gg) >= 1.0 - w.tau_g();
        if (covered && decisive) continue;
        rep.refutation_count += 1;
        if (rep.refutations.size() < WitnessReport::kMaxListed) {
            rep.refutations.push_back({p, res, gg, covered ? "g-ambiguous" : "uncovered"});
        }
    }
    return rep;
}

}  // namespace spancert

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spancert/oracle.hpp"
#include "spancert/separation.hpp"

namespace spancert {

// Step size of the displaced map for a separation at `level`: half the
// separation margin, 2^-(level+2).
double choose_epsilon(int level);

// Certificate that a claimed candidate set C admits no crossing fixed-point
// component: target sets
//   B_lo = ({0} x X)  union  (C restricted to O0),
//   B_hi = ({1} x X)  union  (C restricted to O1),
// steer the displaced map
//   F(t, x) = (t + epsilon * g(t, x), f(t, x)),
//   g = +1 / -1 on B_lo / B_hi, else (d_hi - d_lo) / (d_hi + d_lo)
// which is fixed-point free whenever C really covers the fixed points and
// the separation is genuine.  The restriction of C to a side keeps exactly
// the level k+2 descendants every point of which lies strictly inside the
// side's margin neighbourhood (an exact test on the half-step lattice).
class SeparationWitness {
  public:
    SeparationWitness(Oracle oracle, Separation sep, const BoxSet& claimed);

    const Oracle& oracle() const { return oracle_; }
    const Separation& sep() const { return sep_; }
    const BoxSet& claimed() const { return claimed_; }
    const BoxSet& claimed_in_o0() const { return c0_index_.set(); }
    const BoxSet& claimed_in_o1() const { return c1_index_.set(); }

    double epsilon() const { return epsilon_; }
    // Residual tolerance for "approximately fixed": modulus(eps) + eps.
    double tau() const { return tau_; }
    // Ambiguity tolerance on |g|: min(1/2, 2 tau / delta).
    double tau_g() const { return tau_g_; }
    // Exact distance between the two target sets.
    double delta() const { return delta_; }

    // Distance from p to B_lo resp. B_hi.
    double dist_lo(const PointTX& p) const;
    double dist_hi(const PointTX& p) const;
    double g(const PointTX& p) const;
    // The displaced map (t + epsilon g, f(t, x)); no clamping anywhere.
    PointTX apply(const PointTX& p) const;

  private:
    Oracle oracle_;
    Separation sep_;
    BoxSet claimed_;
    BoxSetIndex c0_index_;  // claimed boxes inside O0, level k+2
    BoxSetIndex c1_index_;  // claimed boxes inside O1, level k+2
    double epsilon_ = 0.0;
    double tau_ = 0.0;
    double tau_g_ = 0.0;
    double delta_ = 0.0;
};

struct Refutation {
    PointTX p;
    double residual = 0.0;
    double g = 0.0;
    std::string reason;  // "uncovered" or "g-ambiguous"
};

struct WitnessReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    double tau = 0.0;
    double tau_g = 0.0;
    double delta = 0.0;
    std::uint64_t approx_fixed_count = 0;    // residual <= tau
    std::uint64_t claimed_sample_count = 0;  // samples inside the claimed union
    std::uint64_t g_exact_one_count = 0;     // |g| == 1 exactly
    // Displacement statistics |F(p) - p| over samples with |g| == 1 and over
    // samples in the claimed union; quiet NaN when the group is empty.
    double min_displacement_g1 = 0.0;
    double max_displacement_g1 = 0.0;
    double min_claimed_displacement = 0.0;
    // min over all samples of min(t', 1 - t') for the displaced t'.
    double min_range_slack = 0.0;
    std::uint64_t refutation_count = 0;
    std::vector<Refutation> refutations;  // capped at kMaxListed
    static constexpr std::size_t kMaxListed = 200;

    bool clean() const { return refutation_count == 0; }
};

// Sample the domain deterministically and test the certificate: every
// approximately fixed point (residual <= tau) must lie in O0 or O1 and must
// be steered decisively (|g| >= 1 - tau_g); violations are reported.
WitnessReport verify_witness(const SeparationWitness& w, std::uint64_t samples,
                             std::uint64_t seed);

}  // namespace spancert

#pragma once

#include <span>

#include "nucembed/spaces.hpp"

namespace nucembed {
namespace detail {

/// Compensated summation; keeps property-test tolerances at 1e-10 even for
/// long blocks.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

/// l_r norm of a contiguous slice, r in (0, inf]. Exponent 1 and inf avoid pow.
double lp_norm(std::span<const double> v, const Exponent& r);

}  // namespace detail

/// The (quasi-)norm of Definition-style mixed spaces, sup-modifications at
/// infinity. Shape-checked entry point.
double mixed_norm(const MixedSpaceSpec& spec, const BlockVector& x);

/// Same value on a flat coordinate array (no copy); hot path for the oracles.
double mixed_norm_flat(const MixedSpaceSpec& spec, std::span<const double> x);

/// Plain bilinear pairing sum over all coordinates of two conforming vectors.
double holder_pairing(const MixedSpaceSpec& spec, const BlockVector& x, const BlockVector& y);

struct ExtremizerResult {
    BlockVector y;
    bool zero_input = false;
};

/// The nested Hoelder equality witness: y with unit norm in the dual space
/// (outer q', inner p', weights 1/beta) and pairing(x, y) = mixed_norm(x).
/// Endpoints: p = inf puts all mass on one maximizing coordinate (lowest
/// flat index wins ties), p = 1 uses the sign vector; same pattern across
/// blocks at q endpoints. For x = 0 returns y = 0 with the zero_input flag.
ExtremizerResult holder_extremizer(const MixedSpaceSpec& spec, const BlockVector& x);

}  // namespace nucembed

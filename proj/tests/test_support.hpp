#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "nucembed/mixed_norm.hpp"

namespace testsupport {

using namespace nucembed;

inline const std::vector<Exponent>& banach_ladder() {
    static const std::vector<Exponent> ladder = {
        Exponent::of(1),  Exponent::of(Rat(4, 3)), Exponent::of(Rat(3, 2)), Exponent::of(2),
        Exponent::of(3),  Exponent::of(4),         Exponent::inf()};
    return ladder;
}

inline Exponent random_banach(std::mt19937_64& rng) {
    const auto& l = banach_ladder();
    return l[std::uniform_int_distribution<std::size_t>(0, l.size() - 1)(rng)];
}

inline std::vector<long long> random_blocks(std::mt19937_64& rng, long long max_total) {
    std::uniform_int_distribution<long long> nblocks(1, 3);
    std::vector<long long> blocks(static_cast<std::size_t>(nblocks(rng)), 1);
    long long remaining = max_total - static_cast<long long>(blocks.size());
    for (auto& m : blocks) {
        if (remaining <= 0) break;
        std::uniform_int_distribution<long long> extra(0, remaining);
        long long e = extra(rng);
        m += e;
        remaining -= e;
    }
    return blocks;
}

inline MixedSpaceSpec random_unit_spec(std::mt19937_64& rng, long long max_total) {
    return MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), random_blocks(rng, max_total));
}

inline BlockVector random_vector(std::mt19937_64& rng, const MixedSpaceSpec& spec, double lo = -1.0,
                                 double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    BlockVector x = BlockVector::zeros_like(spec);
    for (auto& b : x.blocks)
        for (auto& v : b) v = dist(rng);
    return x;
}

/// Naive reference mixed norm: straight loops and std::pow, no compensation,
/// no fast paths. Independent of the library kernel.
inline double reference_mixed_norm(const MixedSpaceSpec& spec, const BlockVector& x) {
    double q = spec.outer_q().to_double();
    double p = spec.inner_p().to_double();
    double outer = 0.0;
    for (std::size_t j = 0; j < x.blocks.size(); ++j) {
        double inner = 0.0;
        if (std::isinf(p)) {
            for (double v : x.blocks[j]) inner = std::max(inner, std::fabs(v));
        } else {
            for (double v : x.blocks[j]) inner += std::pow(std::fabs(v), p);
            inner = std::pow(inner, 1.0 / p);
        }
        double w = spec.weights()[j] * inner;
        if (std::isinf(q)) outer = std::max(outer, w);
        else outer += std::pow(w, q);
    }
    return std::isinf(q) ? outer : std::pow(outer, 1.0 / q);
}

}  // namespace testsupport

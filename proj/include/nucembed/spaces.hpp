#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nucembed/exponent.hpp"

namespace nucembed {

/// Two-parameter growth family g(j) = 2^{geo*j} * (j+1)^{poly} with exact
/// rational parameters. Symbolic carrier for weight and block-size sequences.
struct GrowthFamily {
    Rat geo;
    Rat poly;

    double log2_eval(long long j) const;
    double eval(long long j) const;
    /// round(g(j)) as a block size; throws unless >= 1.
    long long block_size(long long j) const;
    /// True when round(g(j)) >= 1 for every j >= 0.
    bool valid_block_family() const { return geo.is_positive() || (geo.is_zero() && !poly.is_negative()); }
};

/// The space l_q(beta_j l_p^{M_j}): outer exponent q over weighted inner
/// l_p norms of blocks of sizes M_j. Finite mode carries explicit block
/// sizes and weights; symbolic mode carries growth families and supports
/// classification only (never norm evaluation).
class MixedSpaceSpec {
public:
    static MixedSpaceSpec finite(Exponent q, Exponent p, std::vector<long long> blocks,
                                 std::vector<double> weights);
    /// Finite space with unit weights.
    static MixedSpaceSpec finite_unit(Exponent q, Exponent p, std::vector<long long> blocks);
    static MixedSpaceSpec symbolic(Exponent q, Exponent p, GrowthFamily weights, GrowthFamily blocks);

    const Exponent& outer_q() const { return q_; }
    const Exponent& inner_p() const { return p_; }
    bool is_finite() const { return finite_; }
    bool unit_weights() const;

    const std::vector<long long>& blocks() const {
        require_finite();
        return blocks_;
    }
    const std::vector<double>& weights() const {
        require_finite();
        return weights_;
    }
    const GrowthFamily& weight_family() const {
        require_symbolic();
        return *sym_weights_;
    }
    const GrowthFamily& block_family() const {
        require_symbolic();
        return *sym_blocks_;
    }

    long long total_dim() const {
        require_finite();
        return total_dim_;
    }
    std::size_t block_count() const {
        require_finite();
        return blocks_.size();
    }

    /// Dual space: conjugate exponents, reciprocal weights. Finite, Banach range.
    MixedSpaceSpec dual() const;

    /// Finite instantiation of the first n levels of a symbolic spec.
    MixedSpaceSpec prefix(long long n) const;

private:
    MixedSpaceSpec(Exponent q, Exponent p) : q_(q), p_(p) {}
    void require_finite() const {
        if (!finite_) throw std::domain_error("MixedSpaceSpec: operation requires a finite spec");
    }
    void require_symbolic() const {
        if (finite_) throw std::domain_error("MixedSpaceSpec: operation requires a symbolic spec");
    }

    Exponent q_;
    Exponent p_;
    bool finite_ = true;
    std::vector<long long> blocks_;
    std::vector<double> weights_;
    long long total_dim_ = 0;
    std::optional<GrowthFamily> sym_weights_;
    std::optional<GrowthFamily> sym_blocks_;
};

/// Ragged array of real scalars; block j must have length M_j of the paired
/// spec. Carries vectors, diagonal entries and oracle witnesses.
struct BlockVector {
    std::vector<std::vector<double>> blocks;

    static BlockVector zeros_like(const MixedSpaceSpec& spec);
    static BlockVector from_flat(const MixedSpaceSpec& spec, std::span<const double> flat);

    std::vector<double> flat() const;
    long long dim() const;
    bool conforms(const MixedSpaceSpec& spec) const;
    bool is_zero() const;
};

}  // namespace nucembed

#include "nucembed/spaces.hpp"

#include <cmath>

namespace nucembed {

double GrowthFamily::log2_eval(long long j) const {
    return geo.to_double() * static_cast<double>(j) +
           poly.to_double() * std::log2(static_cast<double>(j + 1));
}

double GrowthFamily::eval(long long j) const { return std::exp2(log2_eval(j)); }

long long GrowthFamily::block_size(long long j) const {
    double g = eval(j);
    if (!(g > 0) || g > 9.0e18) throw std::overflow_error("GrowthFamily: block size out of range");
    long long m = static_cast<long long>(std::llround(g));
    if (m < 1) throw std::domain_error("GrowthFamily: block size rounds below 1 at level " + std::to_string(j));
    return m;
}

MixedSpaceSpec MixedSpaceSpec::finite(Exponent q, Exponent p, std::vector<long long> blocks,
                                      std::vector<double> weights) {
    if (blocks.size() != weights.size())
        throw std::invalid_argument("MixedSpaceSpec: blocks and weights differ in length");
    if (blocks.empty()) throw std::invalid_argument("MixedSpaceSpec: at least one block required");
    MixedSpaceSpec s(q, p);
    long long total = 0;
    for (long long m : blocks) {
        if (m < 1) throw std::invalid_argument("MixedSpaceSpec: block sizes must be >= 1");
        total += m;
    }
    for (double b : weights)
        if (!(b > 0) || !std::isfinite(b))
            throw std::invalid_argument("MixedSpaceSpec: weights must be positive and finite");
    s.blocks_ = std::move(blocks);
    s.weights_ = std::move(weights);
    s.total_dim_ = total;
    return s;
}

MixedSpaceSpec MixedSpaceSpec::finite_unit(Exponent q, Exponent p, std::vector<long long> blocks) {
    std::vector<double> w(blocks.size(), 1.0);
    return finite(q, p, std::move(blocks), std::move(w));
}

MixedSpaceSpec MixedSpaceSpec::symbolic(Exponent q, Exponent p, GrowthFamily weights, GrowthFamily blocks) {
    if (!blocks.valid_block_family())
        throw std::invalid_argument("MixedSpaceSpec: block family must stay >= 1 (need geo > 0, or geo = 0 with poly >= 0)");
    MixedSpaceSpec s(q, p);
    s.finite_ = false;
    s.sym_weights_ = weights;
    s.sym_blocks_ = blocks;
    return s;
}

bool MixedSpaceSpec::unit_weights() const {
    require_finite();
    for (double b : weights_)
        if (b != 1.0) return false;
    return true;
}

MixedSpaceSpec MixedSpaceSpec::dual() const {
    require_finite();
    if (!q_.is_banach() || !p_.is_banach())
        throw std::domain_error("MixedSpaceSpec::dual: exponents must lie in [1, inf]");
    std::vector<double> w(weights_.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = 1.0 / weights_[j];
    return finite(conjugate(q_), conjugate(p_), blocks_, std::move(w));
}

MixedSpaceSpec MixedSpaceSpec::prefix(long long n) const {
    require_symbolic();
    if (n < 1) throw std::invalid_argument("MixedSpaceSpec::prefix: need at least one level");
    std::vector<long long> blocks;
    std::vector<double> weights;
    blocks.reserve(n);
    weights.reserve(n);
    for (long long j = 0; j < n; ++j) {
        blocks.push_back(sym_blocks_->block_size(j));
        weights.push_back(sym_weights_->eval(j));
    }
    return finite(q_, p_, std::move(blocks), std::move(weights));
}

BlockVector BlockVector::zeros_like(const MixedSpaceSpec& spec) {
    BlockVector x;
    x.blocks.reserve(spec.block_count());
    for (long long m : spec.blocks()) x.blocks.emplace_back(static_cast<std::size_t>(m), 0.0);
    return x;
}

BlockVector BlockVector::from_flat(const MixedSpaceSpec& spec, std::span<const double> flat) {
    if (static_cast<long long>(flat.size()) != spec.total_dim())
        throw std::invalid_argument("BlockVector: flat length does not match the spec's total dimension");
    BlockVector x;
    std::size_t pos = 0;
    for (long long m : spec.blocks()) {
        x.blocks.emplace_back(flat.begin() + pos, flat.begin() + pos + m);
        pos += static_cast<std::size_t>(m);
    }
    return x;
}

std::vector<double> BlockVector::flat() const {
    std::vector<double> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

long long BlockVector::dim() const {
    long long n = 0;
    for (const auto& b : blocks) n += static_cast<long long>(b.size());
    return n;
}

bool BlockVector::conforms(const MixedSpaceSpec& spec) const {
    if (!spec.is_finite()) return false;
    if (blocks.size() != spec.block_count()) return false;
    for (std::size_t j = 0; j < blocks.size(); ++j)
        if (static_cast<long long>(blocks[j].size()) != spec.blocks()[j]) return false;
    return true;
}

bool BlockVector::is_zero() const {
    for (const auto& b : blocks)
        for (double v : b)
            if (v != 0.0) return false;
    return true;
}

}  // namespace nucembed

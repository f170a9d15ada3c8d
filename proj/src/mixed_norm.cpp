#include "nucembed/mixed_norm.hpp"

#include <cmath>

namespace nucembed {

namespace detail {

double lp_norm(std::span<const double> v, const Exponent& r) {
    if (r.is_inf()) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    double p = r.to_double();
    KahanSum acc;
    if (r.is_one()) {
        for (double x : v) acc.add(std::fabs(x));
        return acc.value();
    }
    if (p == 2.0) {
        for (double x : v) acc.add(x * x);
        return std::sqrt(acc.value());
    }
    for (double x : v) {
        if (x != 0.0) acc.add(std::pow(std::fabs(x), p));
    }
    return std::pow(acc.value(), 1.0 / p);
}

}  // namespace detail

double mixed_norm_flat(const MixedSpaceSpec& spec, std::span<const double> x) {
    if (static_cast<long long>(x.size()) != spec.total_dim())
        throw std::invalid_argument("mixed_norm: vector length does not match the spec");
    const auto& blocks = spec.blocks();
    const auto& weights = spec.weights();
    const Exponent& p = spec.inner_p();
    const Exponent& q = spec.outer_q();

    if (q.is_inf()) {
        double m = 0.0;
        std::size_t pos = 0;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            double u = detail::lp_norm(x.subspan(pos, static_cast<std::size_t>(blocks[j])), p);
            m = std::max(m, weights[j] * u);
            pos += static_cast<std::size_t>(blocks[j]);
        }
        return m;
    }

    double qd = q.to_double();
    detail::KahanSum acc;
    std::size_t pos = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        double u = weights[j] * detail::lp_norm(x.subspan(pos, static_cast<std::size_t>(blocks[j])), p);
        pos += static_cast<std::size_t>(blocks[j]);
        if (u == 0.0) continue;
        acc.add(q.is_one() ? u : (qd == 2.0 ? u * u : std::pow(u, qd)));
    }
    if (q.is_one()) return acc.value();
    if (qd == 2.0) return std::sqrt(acc.value());
    return std::pow(acc.value(), 1.0 / qd);
}

double mixed_norm(const MixedSpaceSpec& spec, const BlockVector& x) {
    if (!x.conforms(spec)) throw std::invalid_argument("mixed_norm: block shape mismatch");
    auto flat = x.flat();
    return mixed_norm_flat(spec, flat);
}

double holder_pairing(const MixedSpaceSpec& spec, const BlockVector& x, const BlockVector& y) {
    if (!x.conforms(spec) || !y.conforms(spec))
        throw std::invalid_argument("holder_pairing: block shape mismatch");
    detail::KahanSum acc;
    for (std::size_t j = 0; j < x.blocks.size(); ++j)
        for (std::size_t k = 0; k < x.blocks[j].size(); ++k) acc.add(x.blocks[j][k] * y.blocks[j][k]);
    return acc.value();
}

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// Unit-dual-norm functional attaining the inner l_p norm of one block.
// Fills z; returns the block's l_p norm.
double inner_extremizer(std::span<const double> xb, const Exponent& p, std::vector<double>& z) {
    z.assign(xb.size(), 0.0);
    double u = detail::lp_norm(xb, p);
    if (u == 0.0) return 0.0;
    if (p.is_one()) {
        for (std::size_t k = 0; k < xb.size(); ++k) z[k] = sgn(xb[k]);
        return u;
    }
    if (p.is_inf()) {
        std::size_t arg = 0;
        for (std::size_t k = 1; k < xb.size(); ++k)
            if (std::fabs(xb[k]) > std::fabs(xb[arg])) arg = k;
        z[arg] = sgn(xb[arg]);
        return u;
    }
    double pd = p.to_double();
    for (std::size_t k = 0; k < xb.size(); ++k) {
        if (xb[k] == 0.0) continue;
        z[k] = sgn(xb[k]) * std::pow(std::fabs(xb[k]) / u, pd - 1.0);
    }
    return u;
}

}  // namespace

ExtremizerResult holder_extremizer(const MixedSpaceSpec& spec, const BlockVector& x) {
    if (!spec.is_finite()) throw std::domain_error("holder_extremizer: spec must be finite");
    if (!spec.inner_p().is_banach() || !spec.outer_q().is_banach())
        throw std::domain_error("holder_extremizer: exponents must lie in [1, inf]");
    if (!x.conforms(spec)) throw std::invalid_argument("holder_extremizer: block shape mismatch");

    ExtremizerResult res;
    res.y = BlockVector::zeros_like(spec);
    if (x.is_zero()) {
        res.zero_input = true;
        return res;
    }

    const auto& weights = spec.weights();
    const Exponent& q = spec.outer_q();
    std::size_t nblocks = x.blocks.size();

    // Inner stage: per-block unit functionals z_j with <x_j, z_j> = |x_j|_p.
    std::vector<std::vector<double>> z(nblocks);
    std::vector<double> w(nblocks);  // weighted block norms beta_j * u_j
    for (std::size_t j = 0; j < nblocks; ++j) {
        double u = inner_extremizer(x.blocks[j], spec.inner_p(), z[j]);
        w[j] = weights[j] * u;
    }

    // Outer stage: coefficients c_j with unit l_{q'} norm and sum c_j w_j = |w|_q.
    std::vector<double> c(nblocks, 0.0);
    if (q.is_one()) {
        for (std::size_t j = 0; j < nblocks; ++j) c[j] = 1.0;
    } else if (q.is_inf()) {
        std::size_t arg = 0;
        for (std::size_t j = 1; j < nblocks; ++j)
            if (w[j] > w[arg]) arg = j;
        c[arg] = 1.0;
    } else {
        double qd = q.to_double();
        double nw = detail::lp_norm(w, q);
        for (std::size_t j = 0; j < nblocks; ++j)
            if (w[j] > 0.0) c[j] = std::pow(w[j] / nw, qd - 1.0);
    }

    for (std::size_t j = 0; j < nblocks; ++j) {
        double scale = c[j] * weights[j];
        if (scale == 0.0) continue;
        for (std::size_t k = 0; k < z[j].size(); ++k) res.y.blocks[j][k] = scale * z[j][k];
    }
    return res;
}

}  // namespace nucembed

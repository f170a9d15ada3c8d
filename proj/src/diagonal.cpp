#include "nucembed/diagonal.hpp"

#include <cmath>
#include <limits>

namespace nucembed {

namespace {

void require_banach(const MixedSpaceSpec& s, const char* who) {
    if (!s.outer_q().is_banach() || !s.inner_p().is_banach())
        throw std::domain_error(std::string(who) + ": exponents must lie in [1, inf]");
}

MixedSpaceSpec unit_space(const Exponent& q, const Exponent& p, const std::vector<long long>& blocks) {
    return MixedSpaceSpec::finite_unit(q, p, blocks);
}

}  // namespace

DiagonalOperator::DiagonalOperator(BlockVector lam, MixedSpaceSpec s, MixedSpaceSpec d)
    : lambda(std::move(lam)), src(std::move(s)), dst(std::move(d)) {
    if (!src.is_finite() || !dst.is_finite())
        throw std::invalid_argument("DiagonalOperator: endpoint specs must be finite");
    if (src.blocks() != dst.blocks())
        throw std::invalid_argument("DiagonalOperator: source and destination must share one block list");
    if (!src.unit_weights() || !dst.unit_weights())
        throw std::invalid_argument("DiagonalOperator: endpoint weights must be 1 (fold weights into lambda)");
    if (!lambda.conforms(src)) throw std::invalid_argument("DiagonalOperator: lambda does not conform to the blocks");
}

DenseOperator::DenseOperator(std::vector<double> matrix, MixedSpaceSpec s, MixedSpaceSpec d)
    : a(std::move(matrix)), src(std::move(s)), dst(std::move(d)) {
    long long n = src.total_dim();
    if (dst.total_dim() != n)
        throw std::invalid_argument("DenseOperator: endpoint spaces must have matching total dimension");
    if (static_cast<long long>(a.size()) != n * n)
        throw std::invalid_argument("DenseOperator: matrix must be N x N for the endpoint dimension");
}

void DenseOperator::apply(std::span<const double> x, std::span<double> out) const {
    std::size_t n = static_cast<std::size_t>(dim());
    for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        const double* row = a.data() + r * n;
        for (std::size_t c = 0; c < n; ++c) acc += row[c] * x[c];
        out[r] = acc;
    }
}

DiagonalOperator diagonal_part(const DenseOperator& t) {
    std::size_t n = static_cast<std::size_t>(t.dim());
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = t.a[i * n + i];
    return DiagonalOperator(BlockVector::from_flat(t.src, diag), t.src, t.dst);
}

double diag_op_norm_exact(const DiagonalOperator& d) {
    require_banach(d.src, "diag_op_norm_exact");
    require_banach(d.dst, "diag_op_norm_exact");
    auto spec = unit_space(star_exponent(d.src.outer_q(), d.dst.outer_q()),
                           star_exponent(d.src.inner_p(), d.dst.inner_p()), d.src.blocks());
    return mixed_norm(spec, d.lambda);
}

double diag_nuclear_exact(const DiagonalOperator& d) {
    auto spec = unit_space(tong_exponent(d.src.outer_q(), d.dst.outer_q()),
                           tong_exponent(d.src.inner_p(), d.dst.inner_p()), d.src.blocks());
    return mixed_norm(spec, d.lambda);
}

double tong_diag_nuclear(std::span<const double> tau, const Exponent& r1, const Exponent& r2) {
    return detail::lp_norm(tau, tong_exponent(r1, r2));
}

double nuclear_from_sup_source(const DenseOperator& t) {
    if (!t.src.outer_q().is_inf() || !t.src.inner_p().is_inf())
        throw std::domain_error("nuclear_from_sup_source: source must be of sup type (p = q = inf)");
    std::size_t n = static_cast<std::size_t>(t.dim());
    std::vector<double> col(n);
    detail::KahanSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < n; ++r) col[r] = t.a[r * n + i];
        acc.add(mixed_norm_flat(t.dst, col));
    }
    return acc.value();
}

SeriesValue embedding_nuclear_norm(std::span<const double> beta, std::span<const long long> m,
                                   const Exponent& p1, const Exponent& p2, const Exponent& q1,
                                   const Exponent& q2) {
    if (beta.size() != m.size())
        throw std::invalid_argument("embedding_nuclear_norm: beta and M differ in length");
    Exponent tp = tong_exponent(p1, p2);
    Exponent tq = tong_exponent(q1, q2);
    double rp = tp.recip().to_double();
    std::vector<double> terms(beta.size());
    for (std::size_t j = 0; j < beta.size(); ++j)
        terms[j] = std::pow(static_cast<double>(m[j]), rp) / beta[j];
    SeriesValue out;
    out.value = detail::lp_norm(terms, tq);
    if (tq.is_inf()) out.c0_member = true;
    return out;
}

namespace {

double exp2_term(const Rat& gamma, const Rat& delta, long long j) {
    return std::exp2(gamma.to_double() * static_cast<double>(j) +
                     delta.to_double() * std::log2(static_cast<double>(j + 1)));
}

// Sum of exp2(G*j + D*log2(j+1)) over j >= 0, assuming convergence
// (G < 0, or G = 0 with D < -1).
double series_sum(const Rat& g, const Rat& d) {
    double G = g.to_double();
    double D = d.to_double();
    detail::KahanSum acc;
    if (g.is_negative()) {
        for (long long j = 0;; ++j) {
            double term = exp2_term(g, d, j);
            acc.add(term);
            double ratio = std::exp2(G) * std::pow(static_cast<double>(j + 2) / static_cast<double>(j + 1), D);
            if (ratio < 1.0 && term < 1e-18 * std::max(acc.value(), 1e-300)) {
                acc.add(term * ratio / (1.0 - ratio));  // geometric tail majorant
                break;
            }
            if (j > 2'000'000) break;
        }
        return acc.value();
    }
    // G = 0, D < -1: polynomial series with an integral tail correction.
    const long long cutoff = 2'000'000;
    for (long long j = 0; j <= cutoff; ++j) acc.add(std::pow(static_cast<double>(j + 1), D));
    double tail = std::pow(static_cast<double>(cutoff) + 1.5, D + 1.0) / (-D - 1.0);
    acc.add(tail);
    return acc.value();
}

}  // namespace

SeriesValue embedding_nuclear_norm(const GrowthFamily& beta, const GrowthFamily& m, const Exponent& p1,
                                   const Exponent& p2, const Exponent& q1, const Exponent& q2) {
    if (!m.valid_block_family())
        throw std::invalid_argument("embedding_nuclear_norm: block family must stay >= 1");
    Exponent tp = tong_exponent(p1, p2);
    Exponent tq = tong_exponent(q1, q2);
    // Term_j = 2^{gamma j} (j+1)^{delta}, exactly.
    Rat gamma = -beta.geo + m.geo * tp.recip();
    Rat delta = -beta.poly + m.poly * tp.recip();

    SeriesValue out;
    if (tq.is_inf()) {
        out.c0_member = gamma.is_negative() || (gamma.is_zero() && delta.is_negative());
        if (gamma.is_positive() || (gamma.is_zero() && delta.is_positive())) {
            out.divergent = true;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        if (gamma.is_zero()) {
            out.value = 1.0;  // sup attained at j = 0
            return out;
        }
        // gamma < 0: scan until the term ratio drops below 1 for good.
        double best = 0.0;
        for (long long j = 0;; ++j) {
            best = std::max(best, exp2_term(gamma, delta, j));
            double ratio = std::exp2(gamma.to_double()) *
                           std::pow(static_cast<double>(j + 2) / static_cast<double>(j + 1), delta.to_double());
            if (ratio < 1.0) break;
        }
        out.value = best;
        return out;
    }

    Rat t = tq.value();
    Rat g = gamma * t;
    Rat d = delta * t;
    bool converges = gamma.is_negative() || (gamma.is_zero() && d < Rat(-1));
    if (!converges) {
        out.divergent = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = std::pow(series_sum(g, d), 1.0 / t.to_double());
    return out;
}

double factorized_nuclear_upper(std::span<const double> beta, std::span<const long long> m,
                                const Exponent& p1, const Exponent& p2, const Exponent& q1,
                                const Exponent& q2) {
    if (!(q1 <= p1 && p1 <= p2 && p2 <= q2))
        throw std::domain_error("factorized_nuclear_upper: requires q1 <= p1 <= p2 <= q2");
    if (beta.size() != m.size())
        throw std::invalid_argument("factorized_nuclear_upper: beta and M differ in length");

    std::vector<long long> blocks(m.begin(), m.end());

    // Rescaling legs: per-block constants M^{1/p1 - 1/q1} and M^{1/q2 - 1/p2}.
    auto rescaling = [&](const Rat& exponent, const MixedSpaceSpec& s, const MixedSpaceSpec& d) {
        BlockVector lam = BlockVector::zeros_like(s);
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            double v = std::pow(static_cast<double>(blocks[j]), exponent.to_double());
            for (auto& e : lam.blocks[j]) e = v;
        }
        return DiagonalOperator(std::move(lam), s, d);
    };

    auto d1 = rescaling(p1.recip() - q1.recip(), unit_space(q1, p1, blocks), unit_space(q1, q1, blocks));
    auto d2 = rescaling(q2.recip() - p2.recip(), unit_space(q2, q2, blocks), unit_space(q2, p2, blocks));

    // Middle leg, flattened: gamma_j = beta_j^{-1} M_j^{1/t_p - 1/t_q}, repeated M_j times.
    Rat e0 = tong_exponent(p1, p2).recip() - tong_exponent(q1, q2).recip();
    std::vector<double> flat;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        double g = std::pow(static_cast<double>(blocks[j]), e0.to_double()) / beta[j];
        flat.insert(flat.end(), static_cast<std::size_t>(blocks[j]), g);
    }
    return diag_op_norm_exact(d1) * diag_op_norm_exact(d2) * tong_diag_nuclear(flat, q1, q2);
}

}  // namespace nucembed

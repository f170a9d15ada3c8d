#pragma once

#include <optional>
#include <span>

#include "nucembed/mixed_norm.hpp"

namespace nucembed {

/// Block-diagonal, entry-diagonal operator x_k -> lambda_k x_k between two
/// finite mixed-norm spaces sharing one block list. Both endpoint spaces
/// carry unit weights; weighted embeddings fold their weights into lambda.
struct DiagonalOperator {
    BlockVector lambda;
    MixedSpaceSpec src;
    MixedSpaceSpec dst;

    DiagonalOperator(BlockVector lam, MixedSpaceSpec s, MixedSpaceSpec d);
};

/// Dense N x N operator (row-major) between finite mixed-norm spaces of
/// matching total dimension.
struct DenseOperator {
    std::vector<double> a;
    MixedSpaceSpec src;
    MixedSpaceSpec dst;

    DenseOperator(std::vector<double> matrix, MixedSpaceSpec s, MixedSpaceSpec d);
    long long dim() const { return src.total_dim(); }
    void apply(std::span<const double> x, std::span<double> out) const;
};

/// Entrywise diagonal of the matrix over the same block structure.
DiagonalOperator diagonal_part(const DenseOperator& t);

/// |lambda| in the space with outer star(q1,q2), inner star(p1,p2), unit weights.
double diag_op_norm_exact(const DiagonalOperator& d);

/// nu(D): |lambda| in the space with outer t(q1,q2), inner t(p1,p2), unit weights.
double diag_nuclear_exact(const DiagonalOperator& d);

/// Nuclear norm of the flat diagonal operator tau : l_{r1}^n -> l_{r2}^n,
/// i.e. the l_{t(r1,r2)} norm of tau.
double tong_diag_nuclear(std::span<const double> tau, const Exponent& r1, const Exponent& r2);

/// For a sup-type source (p1 = q1 = inf): sum of destination norms of the
/// operator's columns.
double nuclear_from_sup_source(const DenseOperator& t);

/// Value of a (possibly infinite) nuclear-norm series together with the
/// divergence verdict; c0_member is reported whenever t(q1,q2) = inf.
struct SeriesValue {
    double value = 0.0;
    bool divergent = false;
    std::optional<bool> c0_member;

    bool nuclear() const { return !divergent && c0_member.value_or(true); }
};

/// nu(id_beta) for the weighted embedding: the l_{t(q1,q2)} norm of
/// beta_j^{-1} M_j^{1/t(p1,p2)}. Finite prefix overload; always finite.
SeriesValue embedding_nuclear_norm(std::span<const double> beta, std::span<const long long> m,
                                   const Exponent& p1, const Exponent& p2, const Exponent& q1,
                                   const Exponent& q2);

/// Symbolic overload: convergence decided exactly from the growth-family
/// parameters, value summed numerically when convergent, inf otherwise.
SeriesValue embedding_nuclear_norm(const GrowthFamily& beta, const GrowthFamily& m, const Exponent& p1,
                                   const Exponent& p2, const Exponent& q1, const Exponent& q2);

/// Factorised upper bound |D1| * |D2| * nu(D0) on the branch
/// q1 <= p1 <= p2 <= q2; agrees with embedding_nuclear_norm there.
double factorized_nuclear_upper(std::span<const double> beta, std::span<const long long> m,
                                const Exponent& p1, const Exponent& p2, const Exponent& q1,
                                const Exponent& q2);

}  // namespace nucembed

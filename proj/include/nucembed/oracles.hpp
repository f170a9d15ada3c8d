#pragma once

#include <cstdint>
#include <string_view>

#include "nucembed/diagonal.hpp"

namespace nucembed {

enum class CertMethod { closed_form, trace_dual_oracle, random_search, rank_one_upper };

std::string_view cert_method_name(CertMethod m);

/// A certified value for a nuclear norm. Lower-bound methods
/// (trace_dual_oracle, random_search) never exceed the closed form beyond
/// floating tolerance; rank_one_upper never falls below it.
struct NuclearCertificate {
    double value = 0.0;
    CertMethod method = CertMethod::closed_form;
    std::optional<BlockVector> witness;  // optimal diagonal contraction S, when applicable
};

/// Best lower bound sup_S |tr(SD)| over diagonal contractions S : dst -> src.
/// Route (a) evaluates the Hoelder extremizer of the dual norm built purely
/// from star/conjugate exponent algebra; route (b) refines by seeded random
/// search. Requires total dimension <= 64.
NuclearCertificate diag_nuclear_oracle(const DiagonalOperator& d, long budget, std::uint64_t seed);

/// Closed-form value wrapped as a certificate.
NuclearCertificate diag_nuclear_certificate_exact(const DiagonalOperator& d);

/// Naive rank-one decomposition bound: sum_k |lambda_k| |e_k'|_{src'} |e_k|_{dst}.
NuclearCertificate diag_nuclear_rank_one_upper(const DiagonalOperator& d);

/// Best found value of |T x|_dst / |x|_src over signed basis vectors, sign
/// patterns on small supports, random points and coordinate-ascent
/// refinement. Deterministic for a given (budget, seed); monotone in budget;
/// never exceeds the true operator norm. Requires dimension <= 64.
double dense_op_norm_oracle(const DenseOperator& t, long budget, std::uint64_t seed);

}  // namespace nucembed

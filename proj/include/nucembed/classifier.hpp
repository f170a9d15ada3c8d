#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nucembed/geometry.hpp"
#include "nucembed/spaces.hpp"

namespace nucembed {

enum class Scale { B, F };

/// Smoothness/integrability parameters of one function space A^s_{p,q} on a
/// d-dimensional domain. The F scale requires p < inf.
struct FunctionSpaceParams {
    Scale scale = Scale::B;
    Rat s;
    Exponent p = Exponent::of(2);
    Exponent q = Exponent::of(2);
    int d = 1;

    void validate() const;
};

/// What is known about the underlying domain.
struct DomainInfo {
    enum class Regime {
        bounded_lipschitz,
        quasi_bounded_finite_b,
        quasi_bounded_infinite_b,
        not_quasi_bounded,
        finite_measure,
    };

    Regime regime = Regime::bounded_lipschitz;
    std::optional<Rat> b_exact;                     // finite-b regime, exact value
    std::optional<BExponentEstimate> b_estimated;   // finite-b regime, estimate
    std::optional<bool> limsup_positive;            // limsup_j b_j 2^{-j b} > 0, when known

    static DomainInfo bounded_lipschitz();
    static DomainInfo quasi_bounded(const Rat& b, std::optional<bool> limsup_positive = std::nullopt);
    static DomainInfo quasi_bounded_estimate(const BExponentEstimate& est,
                                             std::optional<bool> limsup_positive = std::nullopt);
    static DomainInfo quasi_bounded_infinite();
    static DomainInfo not_quasi_bounded();
    static DomainInfo finite_measure();
};

enum class Status { yes, no, undetermined, not_applicable };

std::string_view status_name(Status s);

/// Classification outcome: compactness and nuclearity statuses, the rule that
/// decided them, and the exact signed distance from the governing threshold.
struct EmbeddingVerdict {
    Status compact = Status::undetermined;
    Status nuclear = Status::undetermined;
    std::string rule_id;
    Rat margin;
    std::optional<Rat> delta;              // s1 - d/p1 - s2 + d/p2
    std::optional<Rat> delta_prime;        // s1 - s2 - d (1/p1 - 1/p2)
    std::optional<Rat> threshold_compact;  // value delta' is compared against
    std::optional<Rat> threshold_nuclear;
    std::vector<std::string> notes;
};

/// delta = s1 - d/p1 - s2 + d/p2, exactly (d/p = 0 at p = inf).
Rat delta(const FunctionSpaceParams& src, const FunctionSpaceParams& dst);

/// Verdict for id_beta between symbolic sequence spaces with weight family
/// beta and block family M. Compactness admits quasi exponents; nuclearity
/// reports not_applicable outside [1, inf].
EmbeddingVerdict classify_sequence_embedding(const GrowthFamily& beta, const GrowthFamily& m,
                                             const Exponent& p1, const Exponent& p2, const Exponent& q1,
                                             const Exponent& q2);

/// Verdict for the embedding on a bounded Lipschitz domain.
EmbeddingVerdict classify_bounded_domain(const FunctionSpaceParams& src, const FunctionSpaceParams& dst);

/// Verdict on a quasi-bounded (or degenerate) domain per the DomainInfo
/// regime. Requires s1 > s2.
EmbeddingVerdict classify_quasi_bounded(const FunctionSpaceParams& src, const FunctionSpaceParams& dst,
                                        const DomainInfo& dom);

/// Single-line structured record with stable field order:
/// compact, nuclear, rule_id, delta, delta_prime, threshold_compact,
/// threshold_nuclear, margin, notes[].
std::string verdict_report(const EmbeddingVerdict& v);

}  // namespace nucembed

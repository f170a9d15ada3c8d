#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nucembed/rational.hpp"

namespace nucembed {

/// Parametric quasi-bounded (or bounded) domain with an exact
/// cube-containment test.
///
///   power_cusp(alpha):  {(x,y) : |y| < x^{-alpha}, x > 1},           d = 2
///   log_cusp(beta):     {(x,y) : |y| < x^{-1} (log x)^{-beta}, x > e}, d = 2
///   box(sides):         (0, L_1) x ... x (0, L_d)
///   comb(counts, d):    disjoint shrunken cubes along a ray, built by
///                       comb_domain with prescribed per-level cube counts
struct DomainSpec {
    enum class Kind { power_cusp, log_cusp, box, comb };

    Kind kind;
    int d = 2;
    Rat alpha;               // power_cusp
    Rat beta;                // log_cusp
    std::vector<Rat> sides;  // box

    /// One placed component of a comb domain: the open cube
    /// prod_i (lo_i, hi_i), all endpoints dyadic.
    struct CombCube {
        int level;
        std::vector<Rat> lo;
        std::vector<Rat> hi;
    };
    std::vector<long long> comb_counts;
    std::vector<CombCube> comb_cubes;

    static DomainSpec power_cusp(const Rat& alpha);
    static DomainSpec log_cusp(const Rat& beta);
    static DomainSpec box(std::vector<Rat> sides);

    /// Parses the flat key-value text configuration
    /// (kind=..., alpha=..., beta=..., side=..., counts=..., d=...).
    static DomainSpec parse(std::string_view text);

    /// Closed-form growth exponent when the kind has one.
    std::optional<Rat> analytic_b() const;
};

/// Quasi-bounded specimen made of comb_counts[j] disjoint open cubes of side
/// 2^{-j}(1 - 2^-8), each centred in its own level-j dyadic cell; cells are
/// placed along the positive x-axis with one-cell gaps so components never
/// touch.
DomainSpec comb_domain(std::span<const long long> counts, int d);

/// True iff the half-open dyadic cube [0,2^-j)^d + 2^-j m lies inside the
/// open set, decided by exact bounds on the monotone boundary at the worst
/// corner (boundary contact excluded).
bool cube_contained(const DomainSpec& domain, int j, std::span<const long long> m);

/// b_j: the number of level-j dyadic cubes inside the domain. Cusp kinds are
/// counted column by column in closed form, never by scanning the plane.
/// Throws std::overflow_error if the count would exceed 2^62.
unsigned long long count_inner_cubes(const DomainSpec& domain, int j);

struct BoxPackProfile {
    struct Row {
        int j;
        unsigned long long count;
        bool unbounded = false;
    };
    std::vector<Row> rows;
    int d = 2;
};

/// Rows (j, b_j) for j_min <= j <= j_max, j_max <= 24.
BoxPackProfile boxpack_profile(const DomainSpec& domain, int j_min, int j_max);

/// CSV export with header "j,b_j,log2bj_over_j".
std::string profile_csv(const BoxPackProfile& profile);

struct BExponentEstimate {
    double b_hat = 0.0;
    double stderr_ = 0.0;
    std::pair<int, int> j_window{0, 0};
    bool log_correction = false;
};

/// Least-squares slope of log2 b_j against j over the top half of the rows
/// with positive counts; a log2(j) regressor is added when the residuals
/// trend that way (the limsup-infinite boundary signature), and its model's
/// slope is then reported.
BExponentEstimate estimate_b(const BoxPackProfile& profile);

/// |Omega_r| of the inner region at distance > r from the boundary; exact
/// for boxes, adaptive quadrature of the shrunken profile for cusps.
double inner_region_measure(const DomainSpec& domain, double r);

/// Growth exponent via the inner-measure route: d + |slope| of
/// log2|Omega_r| against log2 r over the given radii. Unsupported for comb.
BExponentEstimate estimate_b_via_measure(const DomainSpec& domain, std::span<const double> r_grid);

}  // namespace nucembed

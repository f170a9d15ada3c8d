#include <doctest.h>

#include "nucembed/oracles.hpp"
#include "test_support.hpp"

using namespace nucembed;
using namespace testsupport;

namespace {

DiagonalOperator random_diag(std::mt19937_64& rng, long long max_total) {
    auto blocks = random_blocks(rng, max_total);
    auto src = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
    auto dst = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
    return DiagonalOperator(random_vector(rng, src, -2.0, 2.0), src, dst);
}

DenseOperator dense_from(const DiagonalOperator& d) {
    long long n = d.src.total_dim();
    std::vector<double> mat(static_cast<std::size_t>(n * n), 0.0);
    auto lam = d.lambda.flat();
    for (long long i = 0; i < n; ++i) mat[static_cast<std::size_t>(i * n + i)] = lam[static_cast<std::size_t>(i)];
    return DenseOperator(mat, d.src, d.dst);
}

}  // namespace

TEST_CASE("nuclear oracle pinned cases") {
    auto spec = MixedSpaceSpec::finite_unit(Exponent::of(2), Exponent::of(2), {2});

    std::vector<double> zeros = {0.0, 0.0};
    DiagonalOperator zero(BlockVector::from_flat(spec, zeros), spec, spec);
    auto cz = diag_nuclear_oracle(zero, 100, 0);
    CHECK(cz.value == 0.0);

    // identity on l_2^2: value 2, witness the identity contraction
    std::vector<double> ones = {1.0, 1.0};
    DiagonalOperator id(BlockVector::from_flat(spec, ones), spec, spec);
    auto ci = diag_nuclear_oracle(id, 200, 0);
    CHECK(ci.value == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(ci.witness.has_value());
    CHECK(ci.witness->blocks[0][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ci.witness->blocks[0][1] == doctest::Approx(1.0).epsilon(1e-9));

    auto big = MixedSpaceSpec::finite_unit(Exponent::of(2), Exponent::of(2), {65});
    DiagonalOperator too_big(BlockVector::zeros_like(big), big, big);
    CHECK_THROWS_AS(diag_nuclear_oracle(too_big, 10, 0), std::domain_error);
}

TEST_CASE("nuclear oracle reproduces the closed form on random instances") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 150; ++it) {
        auto d = random_diag(rng, 5);
        double exact = diag_nuclear_exact(d);
        auto cert = diag_nuclear_oracle(d, 50, it);
        CHECK(cert.value == doctest::Approx(exact).epsilon(1e-9));
        CHECK(cert.value <= exact + 1e-9 * (1.0 + exact));
        // witness is a genuine contraction whose trace pairing attains the value
        if (cert.witness && !cert.witness->is_zero()) {
            auto star = MixedSpaceSpec::finite_unit(star_exponent(d.dst.outer_q(), d.src.outer_q()),
                                                    star_exponent(d.dst.inner_p(), d.src.inner_p()),
                                                    d.src.blocks());
            CHECK(mixed_norm(star, *cert.witness) <= 1.0 + 1e-9);
            CHECK(std::fabs(holder_pairing(star, d.lambda, *cert.witness)) ==
                  doctest::Approx(cert.value).epsilon(1e-9));
        }
    }
}

TEST_CASE("oracle sandwich with the rank-one upper bound") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 100; ++it) {
        auto d = random_diag(rng, 6);
        double exact = diag_nuclear_exact(d);
        auto lower = diag_nuclear_oracle(d, 100, it);
        auto upper = diag_nuclear_rank_one_upper(d);
        CHECK(lower.value <= exact + 1e-9 * (1.0 + exact));
        CHECK(exact <= upper.value + 1e-9 * (1.0 + upper.value));
        CHECK(upper.method == CertMethod::rank_one_upper);
    }
}

TEST_CASE("nuclear oracle is deterministic for a fixed seed") {
    std::mt19937_64 rng(23);
    auto d = random_diag(rng, 6);
    auto a = diag_nuclear_oracle(d, 500, 42);
    auto b = diag_nuclear_oracle(d, 500, 42);
    CHECK(a.value == b.value);
    CHECK(a.witness->flat() == b.witness->flat());
}

TEST_CASE("dense norm oracle pinned cases") {
    auto e2 = MixedSpaceSpec::finite_unit(Exponent::of(2), Exponent::of(2), {2});

    DenseOperator id({1, 0, 0, 1}, e2, e2);
    CHECK(dense_op_norm_oracle(id, 500, 0) >= 1.0 - 1e-12);
    CHECK(dense_op_norm_oracle(id, 500, 0) <= 1.0 + 1e-12);

    // rotation by 45 degrees is a Euclidean isometry
    double c = std::sqrt(0.5);
    DenseOperator rot({c, -c, c, c}, e2, e2);
    double r = dense_op_norm_oracle(rot, 5000, 1);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r <= 1.0 + 1e-12);
}

TEST_CASE("dense norm oracle reaches the diagonal closed form") {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 12; ++it) {
        auto d = random_diag(rng, 8);
        double exact = diag_op_norm_exact(d);
        double found = dense_op_norm_oracle(dense_from(d), 100000, it);
        CHECK(found <= exact * (1.0 + 1e-9) + 1e-12);
        CHECK(found == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("dense norm oracle is monotone in the budget and deterministic") {
    std::mt19937_64 rng(25);
    for (int it = 0; it < 10; ++it) {
        auto blocks = random_blocks(rng, 5);
        auto src = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
        auto dst = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
        long long n = src.total_dim();
        std::vector<double> mat(static_cast<std::size_t>(n * n));
        for (auto& v : mat) v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        DenseOperator t(mat, src, dst);

        double prev = 0.0;
        for (long budget : {50L, 200L, 1000L, 5000L}) {
            double cur = dense_op_norm_oracle(t, budget, 7);
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(dense_op_norm_oracle(t, 1000, 7) == dense_op_norm_oracle(t, 1000, 7));
    }
}

TEST_CASE("diagonal dominance of the oracle norms") {
    std::mt19937_64 rng(26);
    for (int it = 0; it < 60; ++it) {
        auto blocks = random_blocks(rng, 5);
        auto src = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
        auto dst = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
        long long n = src.total_dim();
        std::vector<double> mat(static_cast<std::size_t>(n * n));
        for (auto& v : mat) v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        DenseOperator t(mat, src, dst);

        double full = dense_op_norm_oracle(t, 4000, it);
        double diag_found = dense_op_norm_oracle(dense_from(diagonal_part(t)), 4000, it);
        CHECK(diag_found <= full + 1e-6);
    }
}

TEST_CASE("diagonal part norm stays below the full oracle with a generous budget") {
    std::mt19937_64 rng(27);
    for (int it = 0; it < 8; ++it) {
        auto blocks = random_blocks(rng, 4);
        auto src = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
        auto dst = MixedSpaceSpec::finite_unit(random_banach(rng), random_banach(rng), blocks);
        long long n = src.total_dim();
        std::vector<double> mat(static_cast<std::size_t>(n * n));
        for (auto& v : mat) v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        DenseOperator t(mat, src, dst);
        CHECK(diag_op_norm_exact(diagonal_part(t)) <= dense_op_norm_oracle(t, 120000, it) + 1e-6);
    }
}

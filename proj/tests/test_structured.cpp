#include <doctest.h>

#include "helpers.hpp"
#include "schurbd/psd.hpp"
#include "schurbd/structured.hpp"
#include "schurbd/verifier.hpp"

using namespace schurbd;
using testutil::max_diff;

using testutil::mat;
using testutil::random_unimodular;

TEST_CASE("build_psi examples")
{
    CHECK(max_diff(build_psi(1.0, 2), mat({{1, -1}, {0, -1}})) == 0.0);
    CHECK(max_diff(build_psi(1.0, 3), mat({{1, -1, 1}, {0, -1, 2}, {0, 0, 1}})) == 0.0);
    const Complex t0 = std::polar(1.0, 0.77);
    CHECK(max_diff(build_psi(t0, 1), mat({{t0}})) == 0.0);
    CHECK_THROWS_AS(build_psi(1.1, 2), InputError);
    CHECK_THROWS_AS(BoundaryJet(1.1, {1.0}), InputError);
}

TEST_CASE("Toeplitz and Hankel factors")
{
    const BoundaryJet ex(1.0, {1.0, 1.0, 0.0, 0.0});
    CHECK(max_diff(build_toeplitz_U(ex, 2), mat({{1, 0}, {1, 1}})) == 0.0);
    CHECK(max_diff(build_hankel_H(ex, 2), mat({{1, 0}, {0, 0}})) == 0.0);

    const BoundaryJet d(1.0, {1.0, 3.0, 3.0, 3.0});
    CHECK(max_diff(build_toeplitz_U(d, 2), mat({{1, 0}, {3, 1}})) == 0.0);
    CHECK(max_diff(build_hankel_H(d, 2), mat({{3, 3}, {3, 3}})) == 0.0);
    CHECK(max_diff(build_toeplitz_U(d, 1), mat({{1}})) == 0.0);
    CHECK(max_diff(build_hankel_H(d, 1), mat({{3}})) == 0.0);

    CHECK_THROWS_AS(build_toeplitz_U(d, 5), InsufficientDataError);
    CHECK_THROWS_AS(build_hankel_H(d, 3), InsufficientDataError);
}

TEST_CASE("build_P examples")
{
    CHECK(max_diff(build_P(BoundaryJet(1.0, {1.0, 1.0, 0.0, 0.0}), 2).P, mat({{1, 0}, {0, 0}})) <= 1e-15);
    CHECK(max_diff(build_P(BoundaryJet(1.0, {1.0, 3.0, 3.0, 3.0}), 2).P, mat({{3, 3}, {3, 3}})) <= 1e-14);
    CHECK(max_diff(build_P(BoundaryJet(1.0, {1.0, 3.0}), 1).P, mat({{3}})) == 0.0);
    // p_11 = s_1 t0 conj(s_0) for any unimodular t0.
    const Complex t0 = std::polar(1.0, 2.1), s0 = std::polar(1.0, -0.3), s1(0.4, 1.7);
    CHECK(std::abs(build_P(BoundaryJet(t0, {s0, s1}), 1).P(0, 0) - s1 * t0 * std::conj(s0)) <= 1e-15);
    CHECK_THROWS_AS(build_P(BoundaryJet(1.0, {1.0, 3.0, 3.0}), 2), InsufficientDataError);
}

TEST_CASE("matrix product agrees with the entrywise double sum and nests")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 5;
        std::vector<Complex> s(2 * n);
        for (auto& x : s) {
            x = testutil::random_complex(rng, 2.0);
        }
        const BoundaryJet data(random_unimodular(rng), s);
        const CMatrix P = build_P(data, n).P;
        const double scale = matrix_scale(P);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                CHECK(std::abs(P(i - 1, j - 1) - p_entry(data, i, j)) <= 1e-12 * scale);
            }
        }
        for (int k = 1; k < n; ++k) {
            CHECK(max_diff(P.topLeftCorner(k, k), build_P(data, k).P) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("extended entries: explicit N = 2 values")
{
    const auto e1 = build_extended_entries(BoundaryJet(1.0, {1.0, 3.0, 9.0}), 1);
    CHECK(std::abs(e1.p_next_lower - 9.0) <= 1e-14);
    CHECK(std::abs(e1.p_next_upper + 3.0) <= 1e-14);
    CHECK(std::abs(e1.u - 12.0) <= 1e-13);

    const auto e2 = build_extended_entries(BoundaryJet(1.0, {1.0, 3.0, 3.0}), 1);
    CHECK(std::abs(e2.p_next_lower - 3.0) <= 1e-14);
    CHECK(std::abs(e2.p_next_upper - 3.0) <= 1e-14);
    CHECK(std::abs(e2.u) <= 1e-13);

    const auto e3 = build_extended_entries(BoundaryJet(1.0, {1.0, 3.0, 3.0, 3.0, 3.0}), 2);
    CHECK(std::abs(e3.Bn(0) - 3.0) <= 1e-13);
    CHECK(std::abs(e3.Bn(1) - 3.0) <= 1e-13);
    CHECK(std::abs(e3.p_next_lower - 3.0) <= 1e-13);
    CHECK(std::abs(e3.p_next_lower - std::conj(e3.p_next_upper)) <= 1e-13);

    CHECK_THROWS_AS(build_extended_entries(BoundaryJet(1.0, {1.0, 3.0, 3.0, 3.0}), 2), InsufficientDataError);
}

TEST_CASE("extended entries agree with the direct double sum")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 4;
        std::vector<Complex> s(2 * n + 1);
        for (auto& x : s) {
            x = testutil::random_complex(rng);
        }
        const BoundaryJet data(random_unimodular(rng), s);
        const auto e = build_extended_entries(data, n);
        double scale = 1.0;
        for (int i = 1; i <= n + 1; ++i) {
            for (int j = 1; j <= n + 1 && i + j - 1 <= 2 * n; ++j) {
                scale = std::max(scale, std::abs(p_entry(data, i, j)));
            }
        }
        CHECK(std::abs(e.p_next_lower - p_entry(data, n + 1, n)) <= 1e-12 * scale);
        CHECK(std::abs(e.p_next_upper - p_entry(data, n, n + 1)) <= 1e-12 * scale);
        for (int i = 1; i <= n; ++i) {
            CHECK(std::abs(e.Bn(i - 1) - p_entry(data, i, n + 1)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("unitary symmetry identity examples")
{
    CHECK(check_unitary_identity(BoundaryJet(1.0, {1.0, 3.0, 3.0, 3.0}), 2).residual < 1e-10);
    CHECK(check_unitary_identity(BoundaryJet(1.0, {1.0, Complex(0.0, 1.0)}), 1).residual >= 1.0);
    CHECK(check_unitary_identity(BoundaryJet(1.0, {1.0, 0.0}), 1).residual < 1e-14);
}

TEST_CASE("symmetry of extended entries for Hermitian data")
{
    // Stated range i + j <= 2n - 2, plus a probe of the row p_{n+1, j},
    // j <= n - 2, used by the singular even-order argument.
    std::mt19937_64 rng(13);
    int probes = 0, probe_failures = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 3;
        const int degree = 1 + trial % 5;
        const auto prob = random_blaschke_problem(degree, random_unimodular(rng), 2 * n - 1, 1000 + trial);
        const BoundaryJet& data = prob.data;
        REQUIRE(hermitian_test(build_P(data, n).P, 1e-9).hermitian);
        double scale = 1.0;
        for (int i = 1; i <= 2 * n; ++i) {
            for (int j = 1; i + j <= 2 * n; ++j) {
                scale = std::max(scale, std::abs(p_entry(data, i, j)));
            }
        }
        for (int i = 1; i <= 2 * n - 3; ++i) {
            for (int j = 1; i + j <= 2 * n - 2; ++j) {
                CHECK(std::abs(p_entry(data, i, j) - std::conj(p_entry(data, j, i))) <= 1e-10 * scale);
            }
        }
        for (int j = 1; j <= n - 2; ++j) {
            ++probes;
            if (std::abs(p_entry(data, n + 1, j) - std::conj(p_entry(data, j, n + 1))) > 1e-10 * scale) {
                ++probe_failures;
            }
        }
    }
    MESSAGE("extended row probes: " << probes << ", asymmetric: " << probe_failures);
    CHECK(probe_failures == 0);
}

TEST_CASE("u is real when P_n is positive definite")
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        const auto prob = random_blaschke_problem(n + trial % 2, random_unimodular(rng), 2 * n - 1, 2000 + trial);
        std::vector<Complex> s = prob.data.s();
        s.push_back(testutil::random_complex(rng, 5.0));
        const BoundaryJet data(prob.data.t0(), s);
        const PsdReport rep = psd_rank(build_P(data, n).P, 1e-9);
        REQUIRE(rep.rank == n);
        const auto e = build_extended_entries(data, n);
        const double scale = std::max({1.0, std::abs(e.p_next_lower), std::abs(e.p_next_upper)});
        CHECK(std::abs(e.u_imag) <= 1e-10 * scale);
    }
}

TEST_CASE("binomial table")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(33, 16) == 1166803110ULL);
    CHECK(binomial(4, 7) == 0);
}

#include <doctest.h>

#include <Eigen/SVD>

#include "helpers.hpp"
#include "schurbd/psd.hpp"
#include "schurbd/structured.hpp"

using namespace schurbd;
using testutil::mat;

namespace {

const Complex I(0.0, 1.0);

} // namespace

TEST_CASE("hermitian_test examples")
{
    const auto h = hermitian_test(mat({{1, I}, {-I, 0}}));
    CHECK(h.hermitian);
    CHECK(h.residual == 0.0);

    const auto nh = hermitian_test(mat({{0, 1}, {0, 0}}));
    CHECK_FALSE(nh.hermitian);
    CHECK(nh.residual == 1.0);

    const CMatrix P2 = build_P(BoundaryJet(1.0, {1.0, 3.0, 3.0, 5.0}), 2).P;
    const auto hp = hermitian_test(P2);
    CHECK(hp.hermitian);
    CHECK(hp.residual < 1e-12);
    CHECK(std::abs(P2(0, 1) - 3.0) < 1e-12);
    CHECK(std::abs(P2(1, 0) - 3.0) < 1e-12);
    CHECK(std::abs(P2(1, 1) - 1.0) < 1e-12);
}

TEST_CASE("psd_rank examples")
{
    const auto a = psd_rank(mat({{3, 3}, {3, 3}}));
    CHECK(a.psd);
    CHECK(a.rank == 1);
    CHECK(std::abs(a.eigs.back() - 6.0) < 1e-13);

    const auto b = psd_rank(mat({{3, 3}, {3, 1}}));
    CHECK_FALSE(b.psd);
    CHECK(b.rank == 2);
    CHECK(b.min_eig < 0.0);

    const auto z = psd_rank(CMatrix::Zero(3, 3));
    CHECK(z.psd);
    CHECK(z.rank == 0);
}

TEST_CASE("psd_rank on Gram matrices A A^*")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 6;
        const int k = 1 + (trial / 6) % 6;
        CMatrix A(n, k);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                A(i, j) = testutil::random_complex(rng);
            }
        }
        const Eigen::JacobiSVD<CMatrix> svd(A);
        const auto& sv = svd.singularValues();
        // Only well separated spectra carry a meaningful expected rank.
        if (sv(sv.size() - 1) < 1e-3 * sv(0)) {
            continue;
        }
        const PsdReport r = psd_rank(A * A.adjoint());
        CHECK(r.psd);
        CHECK(r.rank == std::min(n, k));
    }
}

TEST_CASE("psd_rank invariants")
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 5;
        CMatrix M(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                M(i, j) = testutil::random_complex(rng);
            }
        }
        const CMatrix H = (M + M.adjoint()) / 2.0;
        const PsdReport r = psd_rank(H);
        CHECK(r.rank <= n);
        CHECK(r.eigs.size() == static_cast<std::size_t>(n));
        if (r.psd) {
            CHECK(r.min_eig >= -kDefaultTol * r.scale);
        }
    }
}

TEST_CASE("range_consistency examples")
{
    const auto a = range_consistency(mat({{3, 3}, {3, 3}}), CVector::Constant(2, 3.0));
    REQUIRE(a.consistent);
    REQUIRE(a.x);
    CHECK((mat({{3, 3}, {3, 3}}) * *a.x - CVector::Constant(2, 3.0)).norm() < 1e-12);

    CVector e1(2);
    e1 << 1.0, 0.0;
    const auto b = range_consistency(CMatrix::Zero(2, 2), e1);
    CHECK_FALSE(b.consistent);
    CHECK_FALSE(b.x);

    CVector v(3);
    v << Complex(1, 2), -0.5, Complex(0, 3);
    const auto c = range_consistency(CMatrix::Identity(3, 3), v);
    REQUIRE(c.consistent);
    CHECK((*c.x - v).norm() < 1e-14);
}

TEST_CASE("P v is always in the range of P")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 4;
        const int k = 1 + trial % n;
        CMatrix A(n, k);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                A(i, j) = testutil::random_complex(rng);
            }
        }
        const CMatrix P = A * A.adjoint();
        CVector v(n);
        for (int i = 0; i < n; ++i) {
            v(i) = testutil::random_complex(rng);
        }
        const CVector B = P * v;
        const auto r = range_consistency(P, B);
        REQUIRE(r.consistent);
        CHECK((P * *r.x - B).norm() <= 1e-9 * std::max(1.0, B.norm()));
    }
}

TEST_CASE("numerical_rank")
{
    CHECK(numerical_rank(mat({{1, 2}, {2, 4}})) == 1);
    CHECK(numerical_rank(mat({{1, 0, 0}, {0, 1, 0}})) == 2);
    CHECK(numerical_rank(CMatrix::Zero(2, 3)) == 0);
}

TEST_CASE("borderline eigenvalues are flagged fragile")
{
    const auto r = psd_rank(mat({{1, 0}, {0, 5e-9}}));
    CHECK(r.fragile);
    const auto s = psd_rank(mat({{1, 0}, {0, 0.5}}));
    CHECK_FALSE(s.fragile);
}

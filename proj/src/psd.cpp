#include "schurbd/psd.hpp"

#include <cmath>

namespace schurbd {

namespace {

bool near_threshold(double value, double threshold)
{
    const double a = std::abs(value);
    return a >= threshold / 10.0 && a <= threshold * 10.0;
}

} // namespace

HermitianCheck hermitian_test(const CMatrix& M, double tol)
{
    if (M.rows() != M.cols()) {
        throw UsageError("hermitian_test: matrix is not square");
    }
    HermitianCheck out;
    out.residual = (M - M.adjoint()).cwiseAbs().maxCoeff();
    out.hermitian = out.residual <= tol * matrix_scale(M);
    return out;
}

PsdReport psd_rank(const CMatrix& M, double tol)
{
    const HermitianCheck h = hermitian_test(M, tol);
    PsdReport rep;
    rep.hermitian = h.hermitian;
    rep.herm_residual = h.residual;
    rep.scale = matrix_scale(M);
    const CMatrix sym = (M + M.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("psd_rank: eigensolver failed");
    }
    const double thr = tol * rep.scale;
    const auto& ev = es.eigenvalues();
    rep.eigs.assign(ev.data(), ev.data() + ev.size());
    rep.min_eig = rep.eigs.empty() ? 0.0 : rep.eigs.front();
    rep.psd = rep.min_eig >= -thr;
    for (double e : rep.eigs) {
        if (std::abs(e) > thr) {
            ++rep.rank;
        }
        rep.fragile = rep.fragile || near_threshold(e, thr);
    }
    rep.fragile = rep.fragile || near_threshold(h.residual, thr);
    return rep;
}

int numerical_rank(const CMatrix& A, double tol, double scale)
{
    if (A.size() == 0) {
        return 0;
    }
    const double s = scale > 0.0 ? scale : matrix_scale(A);
    Eigen::JacobiSVD<CMatrix> svd(A);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > tol * s) {
            ++r;
        }
    }
    return r;
}

RangeConsistency range_consistency(const CMatrix& P, const CVector& B, double tol)
{
    if (P.rows() != P.cols() || B.size() != P.rows()) {
        throw UsageError("range_consistency: dimension mismatch");
    }
    const auto n = P.rows();
    CMatrix aug(n, n + 1);
    aug << P, B;
    const double scale = matrix_scale(aug);
    const int rank_p = numerical_rank(P, tol, scale);
    const int rank_aug = numerical_rank(aug, tol, scale);

    RangeConsistency out;
    out.consistent = rank_p == rank_aug;

    Eigen::JacobiSVD<CMatrix> svd(aug);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        out.fragile = out.fragile || near_threshold(svd.singularValues()(i), tol * scale);
    }
    if (out.consistent) {
        // Pseudo-inverse solution restricted to the numerically nonzero spectrum.
        const CMatrix sym = (P + P.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
        if (es.info() != Eigen::Success) {
            throw NumericError("range_consistency: eigensolver failed");
        }
        const CMatrix& V = es.eigenvectors();
        CVector coeff = V.adjoint() * B;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double lam = es.eigenvalues()(i);
            coeff(i) = std::abs(lam) > tol * scale ? coeff(i) / lam : Complex(0.0);
        }
        out.x = V * coeff;
    }
    return out;
}

} // namespace schurbd

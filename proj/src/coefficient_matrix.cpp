#include "schurbd/coefficient_matrix.hpp"

#include <cmath>
#include <numbers>

namespace schurbd {

namespace {

constexpr double kSingularRcond = 1e-14;

Eigen::PartialPivLU<CMatrix> factor_resolvent(const CMatrix& A, bool& singular)
{
    Eigen::PartialPivLU<CMatrix> lu(A);
    const double rc = lu.rcond();
    singular = !(rc > kSingularRcond);
    return lu;
}

} // namespace

CoefficientMatrix CoefficientMatrix::from_parts(Complex t0, CVector M, CMatrix P, CMatrix Ptilde,
                                                double alpha, double beta)
{
    const auto n = M.size();
    if (n < 1 || P.rows() != n || P.cols() != n || Ptilde.rows() != n || Ptilde.cols() != n) {
        throw UsageError("CoefficientMatrix: inconsistent state dimensions");
    }
    CoefficientMatrix S;
    S.t0_ = t0;
    S.T_ = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        S.T_(i, i) = t0;
        if (i + 1 < n) {
            S.T_(i + 1, i) = 1.0;
        }
    }
    S.M_ = std::move(M);
    S.P_ = std::move(P);
    S.Ptilde_ = std::move(Ptilde);
    S.alpha_ = alpha;
    S.beta_ = beta;

    S.PTstar_ = S.P_ * S.T_.adjoint();

    // T^{-1} e_1 by forward substitution: x_0 = 1/t0, x_i = -x_{i-1}/t0.
    S.TinvE_ = CVector::Zero(n);
    S.TinvE_(0) = 1.0 / t0;
    for (Eigen::Index i = 1; i < n; ++i) {
        S.TinvE_(i) = -S.TinvE_(i - 1) / t0;
    }
    S.TM_ = S.T_ * S.M_;

    Eigen::LDLT<CMatrix> ldlt(S.P_);
    if (ldlt.info() != Eigen::Success) {
        throw NumericError("CoefficientMatrix: P is not factorizable");
    }
    S.dvec_ = S.Ptilde_ * ldlt.solve(S.M_);
    return S;
}

CVector CoefficientMatrix::E() const
{
    CVector e = CVector::Zero(M_.size());
    e(0) = 1.0;
    return e;
}

SEntries CoefficientMatrix::eval(Complex z) const
{
    bool singular = false;
    const CMatrix A = Ptilde_ - z * PTstar_;
    auto lu = factor_resolvent(A, singular);
    if (singular) {
        throw DomainError("coefficient matrix: resolvent is singular (pole of S)");
    }
    const CVector X = lu.solve(M_);
    const CVector Y = lu.solve(TinvE_);
    SEntries s;
    s.a = X(0);
    s.b = beta_ * (1.0 - z * Y(0));
    s.c = alpha_ * (1.0 - z * TM_.dot(X));
    s.d = z * alpha_ * beta_ * dvec_.dot(Y);
    return s;
}

SJets CoefficientMatrix::jets(Complex center, std::size_t order) const
{
    bool singular = false;
    const CMatrix A0 = Ptilde_ - center * PTstar_;
    auto lu = factor_resolvent(A0, singular);
    if (singular) {
        throw DegeneracyError("coefficient matrix: resolvent singular at jet center");
    }
    const std::size_t K = order;
    std::vector<Complex> ea(K + 1), eY(K + 1), tmX(K + 1), dY(K + 1);
    CVector X = lu.solve(M_);
    CVector Y = lu.solve(TinvE_);
    for (std::size_t k = 0;; ++k) {
        ea[k] = X(0);
        eY[k] = Y(0);
        tmX[k] = TM_.dot(X);
        dY[k] = dvec_.dot(Y);
        if (k == K) {
            break;
        }
        X = lu.solve(PTstar_ * X);
        Y = lu.solve(PTstar_ * Y);
    }
    const Jet z = Jet::variable(center, K);
    const Jet one = Jet::constant(center, K, 1.0);
    Jet a(center, std::move(ea));
    Jet b = (one - z * Jet(center, std::move(eY))) * Complex(beta_);
    Jet c = (one - z * Jet(center, std::move(tmX))) * Complex(alpha_);
    Jet d = (z * Jet(center, std::move(dY))) * Complex(alpha_ * beta_);
    return SJets{std::move(a), std::move(b), std::move(c), std::move(d)};
}

double CoefficientMatrix::unitarity_defect(int samples) const
{
    double defect = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * (k + 0.5) / samples;
        const Complex z = std::polar(1.0, theta);
        const SEntries e = eval(z);
        Eigen::Matrix2cd S;
        S << e.a, e.b, e.c, e.d;
        const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
        defect = std::max(defect, (S.adjoint() * S - I).cwiseAbs().maxCoeff());
        defect = std::max(defect, (S * S.adjoint() - I).cwiseAbs().maxCoeff());
    }
    return defect;
}

} // namespace schurbd

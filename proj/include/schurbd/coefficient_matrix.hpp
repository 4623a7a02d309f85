#pragma once

#include <cstddef>

#include "schurbd/common.hpp"
#include "schurbd/jet.hpp"

namespace schurbd {

struct SEntries {
    Complex a, b, c, d;
};

struct SJets {
    Jet a, b, c, d;
};

///
/// The 2x2 inner rational matrix function
///
///   S(z) = [ a(z)  b(z) ]
///          [ c(z)  d(z) ]
///
/// generating all solutions of the maximal-order boundary problem through
/// f = a + b c E / (1 - d E). It is stored in state form: T (lower bidiagonal
/// with t0 on the diagonal and ones below), E = e_1, M = (s_0..s_{n-1}),
/// P (positive definite structured matrix) and Ptilde = P + M M^*.
///
/// Entries are never expanded symbolically: values and jets come from linear
/// solves against the resolvent Ptilde - z P T^*.
///
class CoefficientMatrix {
public:
    /// Assembles S from its state data; the cached helper vectors are derived
    /// deterministically from the arguments.
    static CoefficientMatrix from_parts(Complex t0, CVector M, CMatrix P, CMatrix Ptilde,
                                        double alpha, double beta);

    Complex t0() const noexcept { return t0_; }
    int n() const noexcept { return static_cast<int>(M_.size()); }
    const CMatrix& T() const noexcept { return T_; }
    CVector E() const;
    const CVector& M() const noexcept { return M_; }
    const CMatrix& P() const noexcept { return P_; }
    const CMatrix& Ptilde() const noexcept { return Ptilde_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    /// Pointwise values of a, b, c, d. Throws DomainError at a pole.
    SEntries eval(Complex z) const;

    /// Taylor jets of a, b, c, d at center, computed by the recursion
    ///   A0 X_k = (P T^*) X_{k-1} + [k == 0] rhs,   A0 = Ptilde - center P T^*.
    /// Throws DegeneracyError when A0 is singular.
    SJets jets(Complex center, std::size_t order) const;

    /// max over `samples` circle points of |S^* S - I| and |S S^* - I|
    /// (entrywise). Zero for an exactly inner S.
    double unitarity_defect(int samples = 128) const;

private:
    CoefficientMatrix() = default;

    Complex t0_{1.0};
    CMatrix T_;
    CVector M_;
    CMatrix P_;
    CMatrix Ptilde_;
    double alpha_ = 0.0;
    double beta_ = 0.0;

    CMatrix PTstar_; // P T^*
    CVector TinvE_;  // T^{-1} E
    CVector TM_;     // T M, so that M^* T^* x = TM^* x
    CVector dvec_;   // Ptilde P^{-1} M, so that M^* P^{-1} Ptilde y = dvec^* y
};

} // namespace schurbd

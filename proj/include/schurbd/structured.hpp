#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schurbd/common.hpp"

namespace schurbd {

///
/// Boundary interpolation data: a unimodular point t0 and the prescribed
/// nontangential expansion coefficients s_0..s_N.
///
class BoundaryJet {
public:
    /// Validates ||t0| - 1| <= 1e-12 and N >= 0.
    BoundaryJet(Complex t0, std::vector<Complex> s);

    Complex t0() const noexcept { return t0_; }
    const std::vector<Complex>& s() const noexcept { return s_; }
    Complex s(int j) const { return s_.at(static_cast<std::size_t>(j)); }
    int N() const noexcept { return static_cast<int>(s_.size()) - 1; }

    /// Data truncated to s_0..s_{order}.
    BoundaryJet truncated(int order) const;

    /// max(1, max_j |s_j|).
    double scale() const;

private:
    Complex t0_;
    std::vector<Complex> s_;
};

/// Exact binomial coefficient from a Pascal table (n < 64).
std::uint64_t binomial(int n, int k);

/// Entry Psi_{j,l}(t0), 1-based, defined for all j, l >= 1.
Complex psi_entry(Complex t0, int j, int l);

/// Upper triangular n x n matrix with entries (-1)^{l-1} C(l-1, j-1) t0^{l+j-1}.
/// Throws InputError if |t0| is off the circle by more than 1e-9.
CMatrix build_psi(Complex t0, int n);

/// Lower triangular Toeplitz matrix with first column s_0..s_{n-1}.
CMatrix build_toeplitz_U(const BoundaryJet& data, int n);

/// Hankel matrix with entries s_{j+k-1} (1-based j, k).
CMatrix build_hankel_H(const BoundaryJet& data, int n);

/// Entry p_{ij} (1-based) by the direct double sum; needs i + j - 1 <= N.
Complex p_entry(const BoundaryJet& data, int i, int j);

struct StructuredSet {
    int n = 0;
    CMatrix U;
    CMatrix H;
    CMatrix Psi;
    CMatrix P;
    std::optional<CVector> Bn;
    std::optional<Complex> phi;
    std::optional<Complex> upsilon;
    std::optional<Complex> p_next_lower; // p_{n+1,n}
    std::optional<Complex> p_next_upper; // p_{n,n+1}
    std::optional<double> u;
};

/// P = H Psi U^*. Needs 2n - 1 <= N. When 2n <= N the extended entries are
/// filled in as well.
StructuredSet build_P(const BoundaryJet& data, int n);

struct ExtendedEntries {
    CVector Bn;
    Complex phi;
    Complex upsilon;
    Complex p_next_lower; // p_{n+1,n}
    Complex p_next_upper; // p_{n,n+1}
    double u = 0.0;       // Re t0 (p_{n+1,n} - conj p_{n,n+1})
    double u_imag = 0.0;  // imaginary residual of the same quantity
};

/// B_n, Phi, Upsilon, p_{n+1,n}, p_{n,n+1} and u. Needs 2n <= N.
ExtendedEntries build_extended_entries(const BoundaryJet& data, int n);

struct UnitaryIdentityCheck {
    double residual = 0.0; // Frobenius norm of U Psi U^* - Psi
    double scale = 1.0;    // max(1, max entry of the two sides)
};

///
/// Residual of the unitary-symmetry identity
///
///   U_{2n}^T Psi_{2n}(t0) conj(U_{2n}^T) = Psi_{2n}(t0),
///
/// where U_{2n}^T is the upper triangular Toeplitz matrix with first row
/// s_0..s_{2n-1}. It vanishes iff |s_0| = 1 and P_n is Hermitian.
/// Needs 2n - 1 <= N.
///
UnitaryIdentityCheck check_unitary_identity(const BoundaryJet& data, int n);

} // namespace schurbd

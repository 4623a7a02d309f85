#pragma once

#include <optional>
#include <vector>

#include "schurbd/common.hpp"

namespace schurbd {

struct HermitianCheck {
    bool hermitian = false;
    double residual = 0.0; // max |M_jk - conj(M_kj)|
};

/// Hermitian iff residual <= tol * scale(M).
HermitianCheck hermitian_test(const CMatrix& M, double tol = kDefaultTol);

struct PsdReport {
    bool hermitian = false;
    double herm_residual = 0.0;
    bool psd = false;
    int rank = 0;
    double min_eig = 0.0;
    std::vector<double> eigs; // ascending
    double scale = 1.0;
    /// Some eigenvalue lies within a factor 10 of the threshold tol * scale.
    bool fragile = false;
};

/// Eigenvalue-based PSD test and numerical rank of the symmetrized matrix
/// (M + M^*)/2: psd iff min_eig >= -tol*scale, rank counts eigenvalues with
/// modulus above tol*scale. Throws NumericError if the eigensolver fails.
PsdReport psd_rank(const CMatrix& M, double tol = kDefaultTol);

/// Rank of a rectangular matrix: singular values above tol * scale(A).
int numerical_rank(const CMatrix& A, double tol = kDefaultTol, double scale = 0.0);

struct RangeConsistency {
    bool consistent = false;
    std::optional<CVector> x; // least-squares solution of P x = B when consistent
    bool fragile = false;
};

/// Whether B lies in the range of the PSD matrix P, decided as
/// rank [P B] == rank P.
RangeConsistency range_consistency(const CMatrix& P, const CVector& B, double tol = kDefaultTol);

} // namespace schurbd

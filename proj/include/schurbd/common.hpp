#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace schurbd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative tolerance used for Hermitian, rank and sign decisions unless the
/// caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

//
// Error hierarchy. Every failure raised by the library derives from Error so
// callers can catch one type; the concrete class tells what went wrong.
//
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain problem data (off-circle t0, bad JSON, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Mismatched jet centers/orders and similar API misuse.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Not enough coefficients to form the requested structured object.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole or outside the domain of a representation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Jet division by a series whose constant term vanishes.
class DivisionByNonunitError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Violated precondition of a construction (e.g. P not positive definite).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Linear algebra breakdown (singular resolvent, eigensolver failure).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Singular resolvent at a jet center or vanishing inverse denominator.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Classifier and synthesizer disagree, or a self-check gate failed.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Iterative construction exhausted its escalation budget.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// max(1, largest entry modulus); all matrix tolerances are relative to it.
inline double matrix_scale(const CMatrix& m)
{
    double s = 1.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            s = std::max(s, std::abs(m(i, j)));
        }
    }
    return s;
}

} // namespace schurbd

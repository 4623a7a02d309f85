#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schurbd/analytic_function.hpp"
#include "schurbd/classifier.hpp"
#include "schurbd/coefficient_matrix.hpp"
#include "schurbd/common.hpp"
#include "schurbd/structured.hpp"

namespace schurbd {

struct LftBuild {
    std::shared_ptr<const CoefficientMatrix> S;
    double unitarity_defect = 0.0; // on 128 circle samples
};

/// Coefficient matrix at level n from s_0..s_{2n-1}. Throws PreconditionError
/// unless |s_0| = 1 and P_n is positive definite.
LftBuild build_lft(const BoundaryJet& data, int n, double tol = kDefaultTol);

/// f = a + b c E / (1 - d E).
AnalyticFunction lft_apply(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction E);

/// E = (f - a) / (b c + d (f - a)). Throws DegeneracyError when the
/// denominator vanishes on a 64-point interior grid.
AnalyticFunction lft_invert(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction f);

struct ReducedProblem {
    std::vector<Complex> R_jet; // R_0..R_{N-2n}; empty when not analytic
    Complex R0{0.0};
    Complex R0_closed{0.0}; // closed-form value from F_0, c_n, d(t0)
    bool analytic = false;
    Complex d0{0.0};  // d(t0)
    Complex cn{0.0};  // c_n(t0)
    double denominator = 0.0; // |B_0 C_0 + D_0 F_0|
};

/// Reduction of the order-N problem to conditions on the parameter at t0.
/// Needs N >= 2n.
ReducedProblem reduce_problem(const BoundaryJet& data, int n, const CoefficientMatrix& S,
                              double tol = kDefaultTol);

/// Rational g with jet r_0..r_K at t0 and circle sup <= 1 - 1e-6.
/// Throws PreconditionError if |r_0| > 1 - 1e-6, ConstructionError when the
/// kernel width would drop below 2^-20.
AnalyticFunction synth_interior_jet(Complex t0, const std::vector<Complex>& r);

/// The unique solution of a determinate problem. Throws InconsistencyError
/// when the data and the classification disagree.
AnalyticFunction synth_determinate(const BoundaryJet& data, const Classification& cls);

struct SolveResult {
    Classification classification;
    std::vector<AnalyticFunction> solutions;
    std::string reason;
};

/// Classifies, then builds up to k solutions (exactly one when unique); every
/// returned function has passed verify_asymptotics and the sup-norm check.
SolveResult solve(const BoundaryJet& data, int k_samples = 3, double tol = kDefaultTol);

} // namespace schurbd

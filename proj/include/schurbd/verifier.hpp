#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schurbd/analytic_function.hpp"
#include "schurbd/common.hpp"
#include "schurbd/structured.hpp"

namespace schurbd {

struct VerificationReport {
    bool passed = false;
    std::vector<std::pair<double, double>> remainder_ratios; // (delta, ratio) on the radius
    double fitted_decay_exponent = 0.0; // +inf when every usable ratio is 0
    double supnorm = 0.0;
    bool jet_checked = false; // f analytic at t0 and its jet compared directly
    double jet_error = 0.0;
    std::string details;
};

///
/// Checks f(z) = sum_j s_j (z - t0)^j + o(|z - t0|^N) along z = t0 (1 - 2^-k),
/// k = 4..depth, and optionally along rays at +-30 and +-60 degrees.
///
/// When f is analytic at t0 its jet is compared with s (1e-8 * scale) and
/// that decides. Otherwise the ratios are used: only samples whose rounding
/// floor is well below the threshold count, and the test passes if the last
/// usable ratio is <= 1e-6 (1 + scale) or the fitted slope of log ratio over
/// log delta is >= 0.5.
///
VerificationReport verify_asymptotics(const AnalyticFunction& f, const BoundaryJet& data, int depth = 24,
                                      bool angles = false);

/// Mixed Taylor coefficients of (1 - f(z+u) conj f(z+v)) / (1 - (z+u) conj(z+v)).
/// Throws DomainError for |z| >= 1.
CMatrix schwarz_pick_interior(const AnalyticFunction& f, Complex z, int n);

struct BoundarySpLimit {
    CMatrix matrix;
    bool converged = false;
    int samples = 0;
    std::optional<CMatrix> structured;      // P^f_n from the jet of f at t0
    std::optional<double> structured_error; // max entry difference
};

/// Radial limit of schwarz_pick_interior at t0 (Cauchy criterion 1e-6 * scale).
BoundarySpLimit boundary_sp_limit(const AnalyticFunction& f, Complex t0, int n, int depth = 30);

/// max |f| on `grid` equally spaced circle points.
double supnorm_disk(const AnalyticFunction& f, int grid = 1024);

struct RandomProblem {
    BoundaryJet data;
    AnalyticFunction generator;
};

/// Blaschke product of the given degree (zeros uniform in |z| <= 0.8, random
/// unimodular gamma) and its boundary jet of order N at t0.
RandomProblem random_blaschke_problem(int degree, Complex t0, int N, std::uint64_t seed);

/// Boundary jet of order N at t0 of a given Blaschke product.
RandomProblem blaschke_problem(Complex gamma, const std::vector<Complex>& zeros, Complex t0, int N);

} // namespace schurbd

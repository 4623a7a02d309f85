#include "schurbd/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace schurbd {

namespace {

Complex taylor(const BoundaryJet& data, Complex w)
{
    Complex acc = 0.0;
    for (int j = data.N(); j >= 0; --j) {
        acc = acc * w + data.s(j);
    }
    return acc;
}

double slope_fit(const std::vector<std::pair<double, double>>& pts)
{
    // Least squares slope of log ratio against log delta.
    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto [d, r] : pts) {
        const double x = std::log(d), y = std::log(r);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    return den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

struct PathResult {
    std::vector<std::pair<double, double>> ratios;
    bool passed = false;
    double exponent = 0.0;
    int usable = 0;
};

PathResult run_path(const AnalyticFunction& f, const BoundaryJet& data, int depth, Complex direction)
{
    const int N = data.N();
    const double threshold = 1e-6 * (1.0 + data.scale());
    PathResult out;
    std::vector<std::pair<double, double>> usable;
    for (int k = 4; k <= depth; ++k) {
        const double delta = std::ldexp(1.0, -k);
        const Complex w = -data.t0() * delta * direction;
        const Complex z = data.t0() + w;
        const Complex fz = f.eval(z);
        const Complex tz = taylor(data, w);
        const double denom = std::pow(delta, N);
        const double ratio = std::abs(fz - tz) / denom;
        out.ratios.emplace_back(delta, ratio);
        // Rounding floor of the remainder, pushed through the same scaling.
        const double floor = 1e-14 * std::max({1.0, std::abs(fz), std::abs(tz), data.scale()}) / denom;
        if (floor <= 0.1 * threshold) {
            usable.emplace_back(delta, ratio);
        }
    }
    out.usable = static_cast<int>(usable.size());
    if (usable.empty()) {
        return out;
    }
    const bool all_zero = std::all_of(usable.begin(), usable.end(), [](auto p) { return p.second == 0.0; });
    if (all_zero) {
        out.exponent = std::numeric_limits<double>::infinity();
        out.passed = true;
        return out;
    }
    std::vector<std::pair<double, double>> tail;
    for (auto it = usable.rbegin(); it != usable.rend() && tail.size() < 8; ++it) {
        if (it->second > 0.0) {
            tail.emplace_back(*it);
        }
    }
    out.exponent = tail.size() >= 2 ? slope_fit(tail) : 0.0;
    out.passed = usable.back().second <= threshold || (tail.size() >= 3 && out.exponent >= 0.5);
    return out;
}

// Taylor coefficients of the bivariate kernel from the recursion
// K_ij (1 - |z|^2) = N_ij + conj(z) K_{i-1,j} + z K_{i,j-1} + K_{i-1,j-1}.
CMatrix kernel_recursion(const CMatrix& N, Complex z)
{
    const auto n = N.rows();
    const double one_minus = 1.0 - std::norm(z);
    CMatrix K = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex acc = N(i, j);
            if (i > 0) {
                acc += std::conj(z) * K(i - 1, j);
            }
            if (j > 0) {
                acc += z * K(i, j - 1);
            }
            if (i > 0 && j > 0) {
                acc += K(i - 1, j - 1);
            }
            K(i, j) = acc / one_minus;
        }
    }
    return K;
}

} // namespace

VerificationReport verify_asymptotics(const AnalyticFunction& f, const BoundaryJet& data, int depth, bool angles)
{
    if (depth < 4) {
        throw UsageError("verify_asymptotics: depth must be at least 4");
    }
    VerificationReport rep;
    std::ostringstream details;
    const PathResult radial = run_path(f, data, depth, Complex(1.0));
    rep.remainder_ratios = radial.ratios;
    rep.fitted_decay_exponent = radial.exponent;
    rep.supnorm = supnorm_disk(f, 1024);

    bool ratios_ok = radial.passed;
    details << "radial: usable=" << radial.usable << " exponent=" << radial.exponent
            << (radial.passed ? " pass" : " fail");
    if (angles) {
        for (double deg : {30.0, -30.0, 60.0, -60.0}) {
            const PathResult ray = run_path(f, data, depth, std::polar(1.0, deg * std::numbers::pi / 180.0));
            ratios_ok = ratios_ok && ray.passed;
            details << "; ray " << deg << ": exponent=" << ray.exponent << (ray.passed ? " pass" : " fail");
        }
    }

    std::optional<Jet> jet;
    try {
        jet = f.jet_at(data.t0(), static_cast<std::size_t>(data.N()));
    } catch (const DomainError&) {
    } catch (const DegeneracyError&) {
    }
    if (jet) {
        rep.jet_checked = true;
        for (int j = 0; j <= data.N(); ++j) {
            rep.jet_error = std::max(rep.jet_error, std::abs((*jet)[j] - data.s(j)));
        }
        const bool jet_ok = rep.jet_error <= 1e-8 * data.scale();
        details << "; jet error " << rep.jet_error << (jet_ok ? " pass" : " fail");
        rep.passed = jet_ok;
    } else {
        details << "; not analytic at t0, decided by ratios";
        rep.passed = ratios_ok;
    }
    rep.details = details.str();
    return rep;
}

CMatrix schwarz_pick_interior(const AnalyticFunction& f, Complex z, int n)
{
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("schwarz_pick_interior: |z| must be < 1");
    }
    if (n < 1) {
        throw UsageError("schwarz_pick_interior: n must be at least 1");
    }
    const auto order = static_cast<std::size_t>(n - 1);

    if (const auto* b = std::get_if<AnalyticFunction::BlaschkeProduct>(&f.variant())) {
        // Factored kernel: sum_k g_k(x) conj g_k(y) with
        // g_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) x) * prod_{j<k} b_j(x).
        const Jet x = Jet::variable(z, order);
        Jet prefix = Jet::constant(z, order, 1.0);
        CMatrix K = CMatrix::Zero(n, n);
        for (auto a : b->zeros) {
            const Jet den = 1.0 - x * std::conj(a);
            const Jet g = prefix * Jet::constant(z, order, std::sqrt(1.0 - std::norm(a))) / den;
            CVector G(n);
            for (int i = 0; i < n; ++i) {
                G(i) = g[i];
            }
            K += G * G.adjoint();
            prefix = prefix * ((x - a) / den);
        }
        return K;
    }

    const Jet F = f.jet_at(z, order);
    CMatrix N(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            N(i, j) = (i == 0 && j == 0 ? 1.0 : 0.0) - F[i] * std::conj(F[j]);
        }
    }
    return kernel_recursion(N, z);
}

BoundarySpLimit boundary_sp_limit(const AnalyticFunction& f, Complex t0, int n, int depth)
{
    BoundarySpLimit out;
    CMatrix prev;
    for (int k = 4; k <= depth; ++k) {
        const Complex z = t0 * (1.0 - std::ldexp(1.0, -k));
        CMatrix cur = schwarz_pick_interior(f, z, n);
        ++out.samples;
        if (prev.size() != 0) {
            const double diff = (cur - prev).cwiseAbs().maxCoeff();
            if (diff <= 1e-6 * matrix_scale(cur)) {
                out.converged = true;
                out.matrix = std::move(cur);
                break;
            }
        }
        prev = cur;
        out.matrix = std::move(cur);
    }
    try {
        const Jet jet = f.jet_at(t0, static_cast<std::size_t>(2 * n - 1));
        const BoundaryJet data(t0, std::vector<Complex>(jet.coeffs().begin(), jet.coeffs().end()));
        CMatrix P = build_P(data, n).P;
        out.structured_error = (P - out.matrix).cwiseAbs().maxCoeff();
        out.structured = std::move(P);
    } catch (const DomainError&) {
    } catch (const DegeneracyError&) {
    }
    return out;
}

double supnorm_disk(const AnalyticFunction& f, int grid)
{
    if (grid < 1) {
        throw UsageError("supnorm_disk: grid must be positive");
    }
    double m = 0.0;
    for (int k = 0; k < grid; ++k) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / grid);
        m = std::max(m, std::abs(f.eval(z)));
    }
    return m;
}

RandomProblem blaschke_problem(Complex gamma, const std::vector<Complex>& zeros, Complex t0, int N)
{
    AnalyticFunction B = AnalyticFunction::blaschke(gamma, zeros);
    const Jet jet = B.jet_at(t0, static_cast<std::size_t>(N));
    return RandomProblem{BoundaryJet(t0, std::vector<Complex>(jet.coeffs().begin(), jet.coeffs().end())),
                         std::move(B)};
}

RandomProblem random_blaschke_problem(int degree, Complex t0, int N, std::uint64_t seed)
{
    if (degree < 0) {
        throw UsageError("random_blaschke_problem: degree must be >= 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    const Complex gamma = std::polar(1.0, two_pi * unit(rng));
    std::vector<Complex> zeros;
    for (int k = 0; k < degree; ++k) {
        const double r = 0.8 * std::sqrt(unit(rng));
        zeros.push_back(std::polar(r, two_pi * unit(rng)));
    }
    return blaschke_problem(gamma, zeros, t0, N);
}

} // namespace schurbd

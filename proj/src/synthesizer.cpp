#include "schurbd/synthesizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "schurbd/psd.hpp"
#include "schurbd/verifier.hpp"

namespace schurbd {

namespace {

constexpr double kInteriorMargin = 1e-6;
constexpr double kMinKernelWidth = 1.0 / (1 << 20);

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

double binom(int n, int k) { return static_cast<double>(binomial(n, k)); }

// Fixed parameter menu shared by the infinite branches: 0, 1/4, 1/2, 3/4, 1,
// then 1 - 2^-(j-2).
double menu_fraction(int j)
{
    static constexpr double head[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    if (j < 5) {
        return head[j];
    }
    return 1.0 - std::ldexp(1.0, -(j - 2));
}

// Constant parameters for the maximal-order branch: 0, -conj(d0), then rings
// of eight points.
Complex menu_constant(int j, Complex conj_d0)
{
    if (j == 0) {
        return 0.0;
    }
    if (j == 1) {
        return -conj_d0;
    }
    const int q = j - 2;
    const int ring = q / 8;
    static constexpr double radii[] = {0.5, 0.9, 0.25};
    const double r = ring < 3 ? radii[ring] : 1.0 - std::ldexp(1.0, -(ring - 1));
    const double angle = (q % 8) * std::numbers::pi / 4.0 + ring * 0.1;
    return std::polar(r, angle);
}

bool distinct_from(const AnalyticFunction& f, const std::vector<AnalyticFunction>& others)
{
    static const Complex probes[] = {{0.0, 0.0}, {0.3, 0.2}, {-0.4, 0.5}, {0.1, -0.6}};
    for (const auto& g : others) {
        double diff = 0.0;
        for (auto z : probes) {
            diff = std::max(diff, std::abs(f.eval(z) - g.eval(z)));
        }
        if (diff <= 1e-9) {
            return false;
        }
    }
    return true;
}

bool passes_checks(const AnalyticFunction& f, const BoundaryJet& data)
{
    const VerificationReport rep = verify_asymptotics(f, data, 24);
    return rep.passed && rep.supnorm <= 1.0 + 1e-8;
}

std::vector<Complex> with_extra(std::vector<Complex> r, Complex extra)
{
    r.push_back(extra);
    return r;
}

} // namespace

LftBuild build_lft(const BoundaryJet& data, int n, double tol)
{
    if (std::abs(std::abs(data.s(0)) - 1.0) > tol) {
        throw PreconditionError("build_lft: |s_0| must be 1");
    }
    const StructuredSet set = build_P(data, n);
    const HermitianCheck h = hermitian_test(set.P, tol);
    if (!h.hermitian) {
        throw PreconditionError("build_lft: P_n is not Hermitian");
    }
    CMatrix P = (set.P + set.P.adjoint()) / 2.0;
    const PsdReport rep = psd_rank(P, tol);
    if (!rep.psd || rep.rank < n) {
        throw PreconditionError("build_lft: P_n is not positive definite");
    }
    CVector M(n);
    for (int j = 0; j < n; ++j) {
        M(j) = data.s(j);
    }
    CMatrix Ptilde = P + M * M.adjoint();
    Eigen::LDLT<CMatrix> ldlt(Ptilde);
    const double alpha2 = 1.0 - M.dot(ldlt.solve(M)).real();
    CVector E = CVector::Zero(n);
    E(0) = 1.0;
    const double beta2 = 1.0 - E.dot(ldlt.solve(E)).real();
    for (double v : {alpha2, beta2}) {
        if (!(v > 0.0 && v <= 1.0 + 1e-12)) {
            throw PreconditionError("build_lft: alpha^2 or beta^2 outside (0, 1]");
        }
    }
    auto S = std::make_shared<const CoefficientMatrix>(CoefficientMatrix::from_parts(
        data.t0(), std::move(M), std::move(P), std::move(Ptilde), std::sqrt(std::min(alpha2, 1.0)),
        std::sqrt(std::min(beta2, 1.0))));
    try {
        (void)S->jets(data.t0(), 0);
    } catch (const DegeneracyError& e) {
        throw NumericError(std::string("build_lft: ") + e.what());
    }
    LftBuild out;
    out.unitarity_defect = S->unitarity_defect(128);
    out.S = std::move(S);
    return out;
}

AnalyticFunction lft_apply(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction E)
{
    return AnalyticFunction::lft(std::move(S), std::move(E));
}

AnalyticFunction lft_invert(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction f)
{
    for (double r : {0.0, 0.3, 0.6, 0.9}) {
        for (int k = 0; k < 16; ++k) {
            const Complex z = std::polar(r, 2.0 * std::numbers::pi * (k + 0.25) / 16.0);
            const SEntries e = S->eval(z);
            const Complex fa = f.eval(z) - e.a;
            const Complex den = e.b * e.c + e.d * fa;
            const double ref = std::abs(e.b * e.c) + std::abs(e.d * fa) + std::abs(fa);
            if (!(std::abs(den) > 1e-12 * (1.0 + ref))) {
                throw DegeneracyError("lft_invert: b c + d (f - a) vanishes inside the disk");
            }
        }
    }
    return AnalyticFunction::lft_inverse(std::move(S), std::move(f));
}

ReducedProblem reduce_problem(const BoundaryJet& data, int n, const CoefficientMatrix& S, double tol)
{
    const int N = data.N();
    if (2 * n > N) {
        throw InsufficientDataError("reduce_problem: needs N >= 2n");
    }
    if (S.n() != n) {
        throw UsageError("reduce_problem: coefficient matrix has the wrong level");
    }
    const Complex t0 = data.t0();
    const int L = N - 2 * n;
    const SJets s = S.jets(t0, static_cast<std::size_t>(N));

    std::vector<Complex> F(L + 1), D(L + 1), B(L + 1), C(L + 1);
    for (int j = 0; j <= L; ++j) {
        F[j] = data.s(2 * n + j) - s.a[2 * n + j];
        D[j] = s.d[j];
        B[j] = s.b[n + j];
        C[j] = s.c[n + j];
    }
    // |d(t0)| = 1 exactly; rounding in the modulus would leak into |R_0|.
    D[0] /= std::abs(D[0]);
    const Jet Fj(t0, F), Dj(t0, D), Bj(t0, B), Cj(t0, C);
    const Jet den = Bj * Cj + Dj * Fj;

    ReducedProblem out;
    out.d0 = D[0];
    out.cn = s.c[n];
    out.denominator = std::abs(den.value());
    const double scale = std::max({1.0, std::abs(B[0] * C[0]), std::abs(F[0])});
    out.analytic = out.denominator > tol * scale;

    const Complex closed_den =
        sign_pow(n - 1) * std::pow(std::conj(t0), 2 * n) * std::norm(out.cn) * data.s(0) + F[0];
    out.R0_closed = std::conj(out.d0) * F[0] / closed_den;

    if (out.analytic) {
        const Jet R = Fj / den;
        out.R_jet.assign(R.coeffs().begin(), R.coeffs().end());
        out.R0 = out.R_jet.front();
    } else {
        out.R0 = out.R0_closed;
    }
    return out;
}

AnalyticFunction synth_interior_jet(Complex t0, const std::vector<Complex>& r)
{
    if (r.empty()) {
        throw UsageError("synth_interior_jet: empty jet");
    }
    if (std::abs(r[0]) > 1.0 - kInteriorMargin) {
        throw PreconditionError("synth_interior_jet: |r_0| must be <= 1 - 1e-6");
    }
    const int K = static_cast<int>(r.size()) - 1;
    bool flat = true;
    for (int j = 1; j <= K; ++j) {
        flat = flat && r[j] == Complex(0.0);
    }
    if (flat) {
        return AnalyticFunction::polynomial(0.0, {r[0]});
    }

    // g = P(u) / (1 - u)^K with u = rho conj(t0) (z - t0) / eps and P the
    // degree-K truncation of R(u) (1 - u)^K, where R is the jet in the variable
    // u. The pole sits at t0 / rho, so eps sets the kernel width. Stored as
    // g = R(u) - u^{K+1} Q(u) / (1 - u)^K with Q the dropped part, which keeps
    // the jet exact despite coefficients of size eps^-k.
    const double rmax = std::abs(*std::max_element(r.begin(), r.end(), [](Complex a, Complex b) {
        return std::abs(a) < std::abs(b);
    }));
    for (double eps = 0.25;; eps /= 2.0) {
        if (eps < kMinKernelWidth) {
            throw ConstructionError("synth_interior_jet: kernel width below 2^-20");
        }
        const double rho = 1.0 - eps;
        const Complex w = rho * std::conj(t0) / eps;

        // Coefficients in u, then rescaled to v = z - t0 via u = w v.
        std::vector<Complex> R(K + 1);
        for (int j = 0; j <= K; ++j) {
            R[j] = r[j] / std::pow(w, j);
        }
        std::vector<Complex> num(K, 0.0), den(K + 1);
        for (int i = 0; i < K; ++i) {
            for (int j = 0; j <= K; ++j) {
                const int m = K + 1 + i - j;
                if (m <= K) {
                    num[i] -= R[j] * binom(K, m) * sign_pow(m);
                }
            }
            num[i] *= std::pow(w, K + 1 + i);
        }
        for (int m = 0; m <= K; ++m) {
            den[m] = binom(K, m) * sign_pow(m) * std::pow(w, m);
        }
        AnalyticFunction g = AnalyticFunction::rational(t0, r, static_cast<std::size_t>(K + 1), num, den);

        // Circle sup. g varies on the scale max(eps, |theta|) at angle theta
        // from t0, so the step grows geometrically away from t0.
        double sup = 0.0;
        const double pi = std::numbers::pi;
        for (double theta = -pi; theta < pi;) {
            sup = std::max(sup, std::abs(g.eval(t0 * std::polar(1.0, theta))));
            theta += std::min(2.0 * pi / 4096.0, std::max(eps, std::abs(theta)) / (16.0 * (K + 1)));
        }
        if (sup > 1.0 - kInteriorMargin) {
            continue;
        }

        const Jet jet = g.jet_at(t0, static_cast<std::size_t>(K));
        double err = 0.0;
        for (int j = 0; j <= K; ++j) {
            err = std::max(err, std::abs(jet[j] - r[j]));
        }
        if (!(err <= 1e-9 * std::max(1.0, rmax))) {
            throw ConstructionError("synth_interior_jet: jet mismatch " + std::to_string(err));
        }
        return g;
    }
}

AnalyticFunction synth_determinate(const BoundaryJet& data, const Classification& cls)
{
    if (cls.verdict != Verdict::Unique || !cls.rank) {
        throw InconsistencyError("synth_determinate: classification is not unique");
    }
    const int d = *cls.rank;
    const int N = data.N();
    std::optional<AnalyticFunction> f;
    if (d == 0) {
        f = AnalyticFunction::constant(data.s(0));
    } else {
        if (2 * d > N) {
            throw InconsistencyError("synth_determinate: rank too large for the data");
        }
        LftBuild lb;
        try {
            lb = build_lft(data, d, cls.tol);
        } catch (const PreconditionError& e) {
            throw InconsistencyError(std::string("synth_determinate: ") + e.what());
        }
        const ReducedProblem red = reduce_problem(data.truncated(2 * d), d, *lb.S, cls.tol);
        if (!red.analytic) {
            throw InconsistencyError("synth_determinate: reduction is not analytic");
        }
        const double mod = std::abs(red.R0);
        if (std::abs(mod - 1.0) > 1e-8) {
            throw InconsistencyError("synth_determinate: |R_0| = " + std::to_string(mod) + " is not 1");
        }
        f = lft_apply(lb.S, AnalyticFunction::constant(red.R0 / mod));
    }
    const Jet jet = f->jet_at(data.t0(), static_cast<std::size_t>(N));
    double err = 0.0;
    for (int j = 0; j <= N; ++j) {
        err = std::max(err, std::abs(jet[j] - data.s(j)));
    }
    if (err > 1e-8 * data.scale()) {
        throw InconsistencyError("synth_determinate: jet mismatch " + std::to_string(err));
    }
    return *f;
}

SolveResult solve(const BoundaryJet& data, int k_samples, double tol)
{
    SolveResult out;
    out.classification = classify(data, tol);
    const Classification& cls = out.classification;
    out.reason = cls.reason;
    if (cls.verdict == Verdict::NoSolution) {
        return out;
    }
    if (cls.verdict == Verdict::Unique) {
        AnalyticFunction f = synth_determinate(data, cls);
        if (!passes_checks(f, data)) {
            throw InconsistencyError("solve: determinate solution failed verification");
        }
        out.solutions.push_back(std::move(f));
        return out;
    }
    if (k_samples < 1) {
        return out;
    }

    const Complex t0 = data.t0();
    const Complex s0 = data.s(0);
    const int N = data.N();
    const int n = cls.n;

    // Candidate j of the branch's menu; nullopt when the menu skips it.
    std::function<std::optional<AnalyticFunction>(int)> candidate;
    std::shared_ptr<const CoefficientMatrix> S;

    if (cls.case_tag == CaseTag::abs_lt_1) {
        const double room = 1.0 - std::abs(s0);
        candidate = [&, room](int j) -> std::optional<AnalyticFunction> {
            if (j == 0) {
                return synth_interior_jet(t0, data.s());
            }
            return synth_interior_jet(t0, with_extra(data.s(), menu_fraction(j - 1) * room));
        };
    } else if (cls.case_tag == CaseTag::N0_trivial) {
        candidate = [&](int j) -> std::optional<AnalyticFunction> {
            const double c = menu_fraction(j);
            return AnalyticFunction::polynomial(0.0, {s0 * c, s0 * (1.0 - c) * std::conj(t0)});
        };
    } else {
        S = build_lft(data, n, tol).S;
        const Complex conj_d0 = std::conj(S->eval(t0).d);
        if (N == 2 * n - 1) {
            candidate = [&, conj_d0](int j) -> std::optional<AnalyticFunction> {
                const Complex e = menu_constant(j, conj_d0);
                if (std::abs(e - conj_d0) < 1e-3) {
                    return std::nullopt;
                }
                return lft_apply(S, AnalyticFunction::constant(e));
            };
        } else {
            const ReducedProblem red = reduce_problem(data, n, *S, tol);
            if (!red.analytic) {
                throw InconsistencyError("solve: reduction is not analytic in a solvable case");
            }
            const Complex R0 = red.R0;
            const double mod = std::abs(R0);
            if (N == 2 * n && mod >= 1.0 - 1e-7) {
                const Complex U = R0 / mod;
                candidate = [&, U](int j) -> std::optional<AnalyticFunction> {
                    const double c = menu_fraction(j);
                    return lft_apply(S, AnalyticFunction::polynomial(0.0, {U * c, U * (1.0 - c) * std::conj(t0)}));
                };
            } else if (N == 2 * n) {
                candidate = [&, R0, mod](int j) -> std::optional<AnalyticFunction> {
                    const double lam = menu_fraction(j);
                    const Complex k = lam * (1.0 - mod) / 2.0;
                    return lft_apply(S, AnalyticFunction::polynomial(0.0, {R0 - k, k * std::conj(t0)}));
                };
            } else {
                const std::vector<Complex> R_jet = red.R_jet;
                candidate = [&, R_jet, mod](int j) -> std::optional<AnalyticFunction> {
                    if (j == 0) {
                        return lft_apply(S, synth_interior_jet(t0, R_jet));
                    }
                    return lft_apply(S, synth_interior_jet(t0, with_extra(R_jet, menu_fraction(j - 1) * (1.0 - mod))));
                };
            }
        }
    }

    const int attempts = 4 * k_samples + 8;
    for (int j = 0; j < attempts && static_cast<int>(out.solutions.size()) < k_samples; ++j) {
        std::optional<AnalyticFunction> f = candidate(j);
        if (!f || !distinct_from(*f, out.solutions) || !passes_checks(*f, data)) {
            continue;
        }
        out.solutions.push_back(std::move(*f));
    }
    if (out.solutions.empty()) {
        throw InconsistencyError("solve: no candidate passed verification");
    }
    if (static_cast<int>(out.solutions.size()) < k_samples) {
        out.reason += "; only " + std::to_string(out.solutions.size()) + " verified samples";
    }
    return out;
}

} // namespace schurbd

#include "schurbd/classifier.hpp"

#include <cmath>

namespace schurbd {

namespace {

bool near_threshold(double value, double threshold)
{
    const double a = std::abs(value);
    return a >= threshold / 10.0 && a <= threshold * 10.0;
}

Classification make(CaseTag tag, double tol, std::string reason)
{
    Classification c;
    c.case_tag = tag;
    c.verdict = verdict_of(tag);
    c.tol = tol;
    c.reason = std::move(reason);
    return c;
}

// Screens |s_0| against the unit circle. Returns a finished classification
// when the modulus alone decides.
std::optional<Classification> screen_s0(Complex s0, double tol)
{
    const double a = std::abs(s0);
    const bool fragile = near_threshold(a - 1.0, tol);
    if (a > 1.0 + tol) {
        auto c = make(CaseTag::none_s0_gt_1, tol, "|s_0| > 1");
        c.fragile = fragile;
        return c;
    }
    if (a < 1.0 - tol) {
        auto c = make(CaseTag::abs_lt_1, tol, "|s_0| < 1");
        c.fragile = fragile;
        return c;
    }
    return std::nullopt;
}

double entries_scale(const CMatrix& P, Complex lower, Complex upper)
{
    return std::max({matrix_scale(P), std::abs(lower), std::abs(upper)});
}

} // namespace

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::NoSolution: return "NoSolution";
    case Verdict::Unique: return "Unique";
    case Verdict::Infinite: return "Infinite";
    }
    return "?";
}

std::string_view to_string(CaseTag t) noexcept
{
    switch (t) {
    case CaseTag::abs_lt_1: return "abs_lt_1";
    case CaseTag::N0_trivial: return "N0_trivial";
    case CaseTag::unique_odd_rank_chain: return "unique_odd_rank_chain";
    case CaseTag::unique_even_1_11: return "unique_even_1_11";
    case CaseTag::infinite_maximal: return "infinite_maximal";
    case CaseTag::infinite_even_u_ge_0: return "infinite_even_u_ge_0";
    case CaseTag::infinite_mid_u_gt_0: return "infinite_mid_u_gt_0";
    case CaseTag::none_s0_gt_1: return "none_s0_gt_1";
    case CaseTag::none_n0: return "none_n0";
    case CaseTag::none_not_psd: return "none_not_psd";
    case CaseTag::none_rank_chain: return "none_rank_chain";
    case CaseTag::none_1_11: return "none_1_11";
    case CaseTag::none_singular_deep: return "none_singular_deep";
    case CaseTag::none_u_negative: return "none_u_negative";
    case CaseTag::none_u_zero_deep: return "none_u_zero_deep";
    }
    return "?";
}

Verdict verdict_of(CaseTag t) noexcept
{
    switch (t) {
    case CaseTag::abs_lt_1:
    case CaseTag::N0_trivial:
    case CaseTag::infinite_maximal:
    case CaseTag::infinite_even_u_ge_0:
    case CaseTag::infinite_mid_u_gt_0:
        return Verdict::Infinite;
    case CaseTag::unique_odd_rank_chain:
    case CaseTag::unique_even_1_11:
        return Verdict::Unique;
    default:
        return Verdict::NoSolution;
    }
}

Classification classify(const BoundaryJet& data, double tol)
{
    if (auto c = screen_s0(data.s(0), tol)) {
        return *c;
    }
    const int N = data.N();
    if (N == 0) {
        return make(CaseTag::N0_trivial, tol, "N = 0 with |s_0| = 1");
    }

    Classification c;
    c.tol = tol;

    // P_k is the leading block of P_{k+1}, so the first non-Hermitian order
    // bounds the Hermitian ones.
    const int max_m = (N + 1) / 2;
    int m = 0;
    for (int k = 1; k <= max_m; ++k) {
        PsdReport rep = psd_rank(build_P(data, k).P, tol);
        const bool herm = rep.hermitian;
        c.diagnostics.push_back(std::move(rep));
        if (!herm) {
            break;
        }
        m = k;
    }
    for (int k = 0; k < m; ++k) {
        c.fragile = c.fragile || c.diagnostics[k].fragile;
    }

    const auto finish = [&](CaseTag tag, std::string reason) {
        c.case_tag = tag;
        c.verdict = verdict_of(tag);
        c.reason = std::move(reason);
        return c;
    };

    if (m == 0) {
        c.n = 0;
        return finish(CaseTag::none_n0, "P_1 = t0 s_1 conj(s_0) is not real");
    }
    const PsdReport& top = c.diagnostics[m - 1];
    if (!top.psd) {
        c.n = 0;
        for (int k = m - 1; k >= 1; --k) {
            if (c.diagnostics[k - 1].psd) {
                c.n = k;
                break;
            }
        }
        if (m == 1) {
            return finish(CaseTag::none_n0, "P_1 = t0 s_1 conj(s_0) is negative");
        }
        return finish(CaseTag::none_not_psd, "P_" + std::to_string(m) + " not PSD");
    }

    const int n = m;
    c.n = n;
    c.rank = top.rank;
    const bool singular = top.rank < n;
    const CMatrix P = build_P(data, n).P;

    std::optional<ExtendedEntries> ext;
    if (2 * n <= N) {
        ext = build_extended_entries(data, n);
        c.u = ext->u;
    }

    if (singular) {
        if (N == 2 * n - 1) {
            const int rank_prev = n > 1 ? c.diagnostics[n - 2].rank : 0;
            if (top.rank == rank_prev) {
                return finish(CaseTag::unique_odd_rank_chain, "P_n singular, rank P_n = rank P_{n-1}");
            }
            return finish(CaseTag::none_rank_chain, "P_n singular, rank P_n > rank P_{n-1}");
        }
        if (N == 2 * n) {
            const double thr = tol * entries_scale(P, ext->p_next_lower, ext->p_next_upper);
            const double asym = std::abs(ext->p_next_lower - std::conj(ext->p_next_upper));
            const RangeConsistency range = range_consistency(P, ext->Bn, tol);
            c.fragile = c.fragile || near_threshold(asym, thr) || range.fragile;
            if (asym <= thr && range.consistent) {
                return finish(CaseTag::unique_even_1_11, "P_n singular, symmetric extension exists");
            }
            return finish(CaseTag::none_1_11, asym <= thr ? "P_n singular, B_n not in range of P_n"
                                                          : "P_n singular, p_{n+1,n} != conj p_{n,n+1}");
        }
        return finish(CaseTag::none_singular_deep, "P_n singular with N > 2n");
    }

    if (N == 2 * n - 1) {
        return finish(CaseTag::infinite_maximal, "P_n > 0 with N = 2n - 1");
    }
    const double thr = tol * entries_scale(P, ext->p_next_lower, ext->p_next_upper);
    const double u = ext->u;
    c.fragile = c.fragile || near_threshold(u, thr);
    if (N == 2 * n) {
        if (u >= -thr) {
            return finish(CaseTag::infinite_even_u_ge_0, "P_n > 0, N = 2n, u >= 0");
        }
        return finish(CaseTag::none_u_negative, "P_n > 0, u < 0");
    }
    if (u > thr) {
        return finish(CaseTag::infinite_mid_u_gt_0, "P_n > 0, N > 2n, u > 0");
    }
    if (u < -thr) {
        return finish(CaseTag::none_u_negative, "P_n > 0, u < 0");
    }
    c.fragile = true;
    return finish(CaseTag::none_u_zero_deep, "P_n > 0, N > 2n, u = 0 within tolerance");
}

Classification classify_order1(Complex t0, Complex s0, Complex s1, double tol)
{
    if (auto c = screen_s0(s0, tol)) {
        return *c;
    }
    const Complex p = t0 * s1 * std::conj(s0);
    const double thr = tol * std::max(1.0, std::abs(p));
    Classification c;
    if (2.0 * std::abs(p.imag()) > thr || p.real() < -thr) {
        c = make(CaseTag::none_n0, tol, "t0 s_1 conj(s_0) is not >= 0");
    } else if (p.real() > thr) {
        c = make(CaseTag::infinite_maximal, tol, "t0 s_1 conj(s_0) > 0");
        c.n = 1;
        c.rank = 1;
    } else {
        c = make(CaseTag::unique_odd_rank_chain, tol, "s_1 = 0: f is the constant s_0");
        c.n = 1;
        c.rank = 0;
    }
    return c;
}

Classification classify_order2(Complex t0, Complex s0, Complex s1, Complex s2, double tol)
{
    if (auto c = screen_s0(s0, tol)) {
        return *c;
    }
    const Complex p11 = s1 * t0 * std::conj(s0);
    const Complex p21 = t0 * s2 * std::conj(s0);
    const Complex p12 = std::norm(s1) * t0 - s1 * std::conj(s0) * t0 * t0 - s2 * std::conj(s0) * t0 * t0 * t0;
    const double thr1 = tol * std::max(1.0, std::abs(p11));
    if (2.0 * std::abs(p11.imag()) > thr1 || p11.real() < -thr1) {
        return make(CaseTag::none_n0, tol, "t0 s_1 conj(s_0) is not >= 0");
    }
    const double thr = tol * std::max({1.0, std::abs(p11), std::abs(p21), std::abs(p12)});
    Classification c;
    if (!(p11.real() > thr1)) {
        // s_1 = 0 pins f to the constant s_0, so s_2 must vanish as well.
        if (std::abs(p12) <= thr) {
            c = make(CaseTag::unique_even_1_11, tol, "s_1 = s_2 = 0: f is the constant s_0");
        } else {
            c = make(CaseTag::none_1_11, tol, "s_1 = 0 but s_2 != 0");
        }
        c.n = 1;
        c.rank = 0;
        return c;
    }
    const double lhs = 2.0 * (t0 * t0 * std::conj(s0) * s2).real();
    const double rhs = std::norm(s1) - (t0 * std::conj(s0) * s1).real();
    c = (lhs - rhs >= -thr) ? make(CaseTag::infinite_even_u_ge_0, tol, "2Re(t0^2 conj(s_0) s_2) >= |s_1|^2 - t0 conj(s_0) s_1")
                            : make(CaseTag::none_u_negative, tol, "2Re(t0^2 conj(s_0) s_2) < |s_1|^2 - t0 conj(s_0) s_1");
    c.n = 1;
    c.rank = 1;
    c.u = lhs - rhs;
    return c;
}

} // namespace schurbd

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schurbd/common.hpp"
#include "schurbd/psd.hpp"
#include "schurbd/structured.hpp"

namespace schurbd {

enum class Verdict { NoSolution, Unique, Infinite };

/// Which branch of the decision tree produced the verdict.
enum class CaseTag {
    abs_lt_1,              // |s_0| < 1
    N0_trivial,            // N = 0, |s_0| = 1
    unique_odd_rank_chain, // N = 2n-1, rank P_n = rank P_{n-1}
    unique_even_1_11,      // N = 2n, symmetric next entries and B_n in range of P_n
    infinite_maximal,      // N = 2n-1, P_n > 0
    infinite_even_u_ge_0,  // N = 2n, P_n > 0, u >= 0
    infinite_mid_u_gt_0,   // N > 2n, P_n > 0, u > 0
    none_s0_gt_1,          // |s_0| > 1
    none_n0,               // P_1 = t0 s_1 conj(s_0) not >= 0
    none_not_psd,          // largest Hermitian P_m is not PSD
    none_rank_chain,       // N = 2n-1, singular P_n, rank jumps
    none_1_11,             // N = 2n, singular P_n, symmetry or range condition fails
    none_singular_deep,    // N > 2n, singular P_n
    none_u_negative,       // P_n > 0, u < 0
    none_u_zero_deep,      // N > 2n, P_n > 0, u = 0 (within tolerance)
};

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(CaseTag t) noexcept;
Verdict verdict_of(CaseTag t) noexcept;

struct Classification {
    Verdict verdict = Verdict::NoSolution;
    CaseTag case_tag = CaseTag::none_n0;
    int n = 0;                  // greatest order with P_n PSD (0 if none)
    std::optional<int> rank;    // rank P_n when computed
    std::optional<double> u;    // t0 (p_{n+1,n} - conj p_{n,n+1}) when 2n <= N
    bool fragile = false;
    double tol = kDefaultTol;
    std::vector<PsdReport> diagnostics; // P_1, P_2, ... as examined
    std::string reason;
};

///
/// Decides solvability of the boundary interpolation problem and whether the
/// solution is unique:
///
///  1. |s_0| > 1 has no solution; |s_0| < 1 (or N = 0) has infinitely many.
///  2. With |s_0| = 1 take the largest m <= (N+1)/2 with P_m Hermitian; if it
///     is not PSD there is no solution, otherwise n := m.
///  3. Singular P_n: unique or none depending on N - 2n and the rank chain /
///     symmetric-extension test.
///  4. Definite P_n: infinitely many or none depending on N - 2n and the sign
///     of u = t0 (p_{n+1,n} - conj p_{n,n+1}).
///
/// |s_0| within tol of 1 counts as unimodular.
///
Classification classify(const BoundaryJet& data, double tol = kDefaultTol);

/// Closed-form test for N = 1.
Classification classify_order1(Complex t0, Complex s0, Complex s1, double tol = kDefaultTol);

/// Closed-form test for N = 2.
Classification classify_order2(Complex t0, Complex s0, Complex s1, Complex s2, double tol = kDefaultTol);

} // namespace schurbd

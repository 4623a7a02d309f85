#include "schurbd/structured.hpp"

#include <array>
#include <cmath>
#include <string>

namespace schurbd {

namespace {

constexpr int kPascalRows = 64;

using PascalTable = std::array<std::array<std::uint64_t, kPascalRows>, kPascalRows>;

PascalTable make_pascal()
{
    PascalTable t{};
    for (int n = 0; n < kPascalRows; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
        }
    }
    return t;
}

const PascalTable& pascal()
{
    static const PascalTable table = make_pascal();
    return table;
}

Complex ipow(Complex z, int k)
{
    Complex r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= z;
    }
    return r;
}

void require_circle(Complex t0, double tol, const char* where)
{
    if (std::abs(std::abs(t0) - 1.0) > tol) {
        throw InputError(std::string(where) + ": t0 not unimodular");
    }
}

void require_hankel_data(const BoundaryJet& data, int n, const char* where)
{
    if (n < 1) {
        throw UsageError(std::string(where) + ": order must be at least 1");
    }
    if (2 * n - 1 > data.N()) {
        throw InsufficientDataError(std::string(where) + ": needs s_0..s_" + std::to_string(2 * n - 1) +
                                    ", have N=" + std::to_string(data.N()));
    }
}

} // namespace

BoundaryJet::BoundaryJet(Complex t0, std::vector<Complex> s) : t0_(t0), s_(std::move(s))
{
    if (s_.empty()) {
        throw InputError("BoundaryJet: at least s_0 is required");
    }
    if (std::abs(std::abs(t0_) - 1.0) > 1e-12) {
        throw InputError("BoundaryJet: t0 not unimodular");
    }
}

BoundaryJet BoundaryJet::truncated(int order) const
{
    if (order < 0 || order > N()) {
        throw UsageError("BoundaryJet::truncated: order out of range");
    }
    return BoundaryJet(t0_, std::vector<Complex>(s_.begin(), s_.begin() + order + 1));
}

double BoundaryJet::scale() const
{
    double m = 1.0;
    for (auto x : s_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

std::uint64_t binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    if (n >= kPascalRows) {
        throw UsageError("binomial: row exceeds the exact table");
    }
    return pascal()[n][k];
}

Complex psi_entry(Complex t0, int j, int l)
{
    if (j > l) {
        return 0.0;
    }
    const double sign = ((l - 1) % 2 == 0) ? 1.0 : -1.0;
    return sign * static_cast<double>(binomial(l - 1, j - 1)) * ipow(t0, l + j - 1);
}

CMatrix build_psi(Complex t0, int n)
{
    require_circle(t0, 1e-9, "build_psi");
    if (n < 1) {
        throw UsageError("build_psi: n must be at least 1");
    }
    CMatrix psi = CMatrix::Zero(n, n);
    for (int j = 1; j <= n; ++j) {
        for (int l = j; l <= n; ++l) {
            psi(j - 1, l - 1) = psi_entry(t0, j, l);
        }
    }
    return psi;
}

CMatrix build_toeplitz_U(const BoundaryJet& data, int n)
{
    if (n < 1) {
        throw UsageError("build_toeplitz_U: n must be at least 1");
    }
    if (n > data.N() + 1) {
        throw InsufficientDataError("build_toeplitz_U: n exceeds N+1");
    }
    CMatrix U = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k <= j; ++k) {
            U(j, k) = data.s(j - k);
        }
    }
    return U;
}

CMatrix build_hankel_H(const BoundaryJet& data, int n)
{
    require_hankel_data(data, n, "build_hankel_H");
    CMatrix H(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            H(j, k) = data.s(j + k + 1);
        }
    }
    return H;
}

Complex p_entry(const BoundaryJet& data, int i, int j)
{
    if (i < 1 || j < 1) {
        throw UsageError("p_entry: indices are 1-based");
    }
    if (i + j - 1 > data.N()) {
        throw InsufficientDataError("p_entry: needs i + j - 1 <= N");
    }
    const Complex t0 = data.t0();
    Complex p = 0.0;
    for (int r = 1; r <= j; ++r) {
        Complex inner = 0.0;
        for (int l = 1; l <= r; ++l) {
            inner += data.s(i + l - 1) * psi_entry(t0, l, r);
        }
        p += inner * std::conj(data.s(j - r));
    }
    return p;
}

StructuredSet build_P(const BoundaryJet& data, int n)
{
    require_hankel_data(data, n, "build_P");
    StructuredSet set;
    set.n = n;
    set.U = build_toeplitz_U(data, n);
    set.H = build_hankel_H(data, n);
    set.Psi = build_psi(data.t0(), n);
    set.P = set.H * set.Psi * set.U.adjoint();
    if (2 * n <= data.N()) {
        ExtendedEntries ext = build_extended_entries(data, n);
        set.Bn = std::move(ext.Bn);
        set.phi = ext.phi;
        set.upsilon = ext.upsilon;
        set.p_next_lower = ext.p_next_lower;
        set.p_next_upper = ext.p_next_upper;
        set.u = ext.u;
    }
    return set;
}

ExtendedEntries build_extended_entries(const BoundaryJet& data, int n)
{
    if (n < 1) {
        throw UsageError("build_extended_entries: n must be at least 1");
    }
    if (2 * n > data.N()) {
        throw InsufficientDataError("build_extended_entries: needs 2n <= N");
    }
    const Complex t0 = data.t0();
    const auto s = [&](int k) { return data.s(k); };
    const auto psi = [&](int j, int l) { return psi_entry(t0, j, l); };

    ExtendedEntries out;

    // Top n rows of the order-(n+1) structured matrix, last column.
    CMatrix rows(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= n; ++k) {
            rows(i, k) = s(i + k + 1);
        }
    }
    CVector tail(n + 1);
    for (int k = 0; k <= n; ++k) {
        tail(k) = std::conj(s(n - k));
    }
    out.Bn = rows * build_psi(t0, n + 1) * tail;

    Complex phi = 0.0;
    for (int r = 1; r <= n - 1; ++r) {
        for (int l = 1; l <= r; ++l) {
            phi += s(n + l) * psi(l, r) * std::conj(s(n - r));
        }
    }
    for (int l = 1; l <= n - 1; ++l) {
        phi += s(n + l) * psi(l, n) * std::conj(s(0));
    }

    Complex upsilon = 0.0;
    for (int r = 1; r <= n; ++r) {
        for (int l = 1; l <= r; ++l) {
            upsilon += s(n + l - 1) * psi(l, r) * std::conj(s(n + 1 - r));
        }
    }
    for (int l = 1; l <= n; ++l) {
        upsilon += s(n + l - 1) * psi(l, n + 1) * std::conj(s(0));
    }

    const double sign_lower = ((n - 1) % 2 == 0) ? 1.0 : -1.0;
    out.phi = phi;
    out.upsilon = upsilon;
    out.p_next_lower = sign_lower * ipow(t0, 2 * n - 1) * s(2 * n) * std::conj(s(0)) + phi;
    out.p_next_upper = -sign_lower * ipow(t0, 2 * n + 1) * s(2 * n) * std::conj(s(0)) + upsilon;
    const Complex u = t0 * (out.p_next_lower - std::conj(out.p_next_upper));
    out.u = u.real();
    out.u_imag = u.imag();
    return out;
}

UnitaryIdentityCheck check_unitary_identity(const BoundaryJet& data, int n)
{
    require_hankel_data(data, n, "check_unitary_identity");
    const int m = 2 * n;
    const CMatrix Uup = build_toeplitz_U(data, m).transpose();
    const CMatrix psi = build_psi(data.t0(), m);
    const CMatrix lhs = Uup * psi * Uup.conjugate();
    UnitaryIdentityCheck out;
    out.residual = (lhs - psi).norm();
    out.scale = std::max(matrix_scale(lhs), matrix_scale(psi));
    return out;
}

} // namespace schurbd

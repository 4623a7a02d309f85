#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "schurbd/common.hpp"

namespace schurbd {

///
/// Truncated complex Taylor series at a fixed center:
///
///   f(center + u) = c_0 + c_1 u + ... + c_K u^K + O(u^{K+1}).
///
/// Arithmetic is strictly truncated at order K; mixing jets of different
/// center or order is a usage error.
///
class Jet {
public:
    Jet(Complex center, std::vector<Complex> coeffs);

    static Jet constant(Complex center, std::size_t order, Complex value);
    /// The identity function z at the given center: (center, 1, 0, ...).
    static Jet variable(Complex center, std::size_t order);

    Complex center() const noexcept { return center_; }
    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t j) const { return coeffs_.at(j); }
    Complex value() const noexcept { return coeffs_.front(); }

    /// Taylor polynomial evaluated at z.
    Complex eval(Complex z) const;
    Jet truncated(std::size_t order) const;

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(Complex c);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, Complex c) { return a *= c; }
    friend Jet operator*(Complex c, Jet a) { return a *= c; }
    friend Jet operator+(Jet a, Complex c)
    {
        a.coeffs_[0] += c;
        return a;
    }
    friend Jet operator+(Complex c, Jet a) { return a + c; }
    friend Jet operator-(Complex c, const Jet& a) { return (a * Complex(-1.0)) + c; }
    friend Jet operator-(Jet a, Complex c) { return a + (-c); }
    Jet operator-() const { return *this * Complex(-1.0); }

private:
    Complex center_;
    std::vector<Complex> coeffs_;
};

/// Truncated Cauchy product.
Jet jet_mul(const Jet& a, const Jet& b);

/// Truncated series quotient a/b. Throws DivisionByNonunitError when
/// |b_0| <= 1e-13 * max|b_k|.
Jet jet_div(const Jet& a, const Jet& b);

inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return jet_div(a, b); }

} // namespace schurbd

#include "schurbd/jet.hpp"

#include <algorithm>
#include <cmath>

namespace schurbd {

namespace {

void require_compatible(const Jet& a, const Jet& b, const char* op)
{
    if (a.center() != b.center() || a.order() != b.order()) {
        throw UsageError(std::string(op) + ": jets differ in center or order");
    }
}

} // namespace

Jet::Jet(Complex center, std::vector<Complex> coeffs)
    : center_(center), coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) {
        throw UsageError("Jet: at least one coefficient is required");
    }
}

Jet Jet::constant(Complex center, std::size_t order, Complex value)
{
    std::vector<Complex> c(order + 1, Complex(0.0));
    c[0] = value;
    return Jet(center, std::move(c));
}

Jet Jet::variable(Complex center, std::size_t order)
{
    std::vector<Complex> c(order + 1, Complex(0.0));
    c[0] = center;
    if (order >= 1) {
        c[1] = 1.0;
    }
    return Jet(center, std::move(c));
}

Complex Jet::eval(Complex z) const
{
    const Complex u = z - center_;
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * u + *it;
    }
    return acc;
}

Jet Jet::truncated(std::size_t order) const
{
    if (order > this->order()) {
        throw UsageError("Jet::truncated: requested order exceeds jet order");
    }
    return Jet(center_, std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Jet& Jet::operator+=(const Jet& rhs)
{
    require_compatible(*this, rhs, "jet_add");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        coeffs_[j] += rhs.coeffs_[j];
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs)
{
    require_compatible(*this, rhs, "jet_sub");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        coeffs_[j] -= rhs.coeffs_[j];
    }
    return *this;
}

Jet& Jet::operator*=(Complex c)
{
    for (auto& x : coeffs_) {
        x *= c;
    }
    return *this;
}

Jet jet_mul(const Jet& a, const Jet& b)
{
    require_compatible(a, b, "jet_mul");
    const std::size_t K = a.order();
    std::vector<Complex> out(K + 1, Complex(0.0));
    for (std::size_t j = 0; j <= K; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k <= j; ++k) {
            acc += a[k] * b[j - k];
        }
        out[j] = acc;
    }
    return Jet(a.center(), std::move(out));
}

Jet jet_div(const Jet& a, const Jet& b)
{
    require_compatible(a, b, "jet_div");
    double bmax = 0.0;
    for (auto x : b.coeffs()) {
        bmax = std::max(bmax, std::abs(x));
    }
    const Complex b0 = b[0];
    if (!(std::abs(b0) > 1e-13 * bmax) || b0 == Complex(0.0)) {
        throw DivisionByNonunitError("jet_div: divisor has vanishing constant term");
    }
    const std::size_t K = a.order();
    std::vector<Complex> q(K + 1, Complex(0.0));
    for (std::size_t j = 0; j <= K; ++j) {
        Complex acc = a[j];
        for (std::size_t k = 1; k <= j; ++k) {
            acc -= b[k] * q[j - k];
        }
        q[j] = acc / b0;
    }
    return Jet(a.center(), std::move(q));
}

} // namespace schurbd

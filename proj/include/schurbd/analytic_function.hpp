#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "schurbd/coefficient_matrix.hpp"
#include "schurbd/common.hpp"
#include "schurbd/jet.hpp"

namespace schurbd {

///
/// Evaluable representation of a function analytic in the disk. Solutions
/// produced by the synthesizer are built from these variants:
///
///   Constant         f(z) = c
///   Polynomial       f(z) = sum_j coeffs[j] (z - center)^j
///   Rational         f(z) = poly(v) + v^shift num(v) / den(v), v = z - center
///   BlaschkeProduct  f(z) = gamma prod_k (z - a_k) / (1 - conj(a_k) z)
///   LftComposite     f = a + b c E / (1 - d E)          (S, E = param)
///   LftInverse       E = (f - a) / (b c + d (f - a))    (S, f)
///
/// Values are immutable once built; nested functions are shared.
///
class AnalyticFunction {
public:
    struct Constant {
        Complex value;
    };
    struct Polynomial {
        Complex center;
        std::vector<Complex> coeffs;
    };
    struct Rational {
        Complex center;
        std::vector<Complex> poly;
        std::size_t shift;
        std::vector<Complex> num;
        std::vector<Complex> den;
    };
    struct BlaschkeProduct {
        Complex gamma;
        std::vector<Complex> zeros;
    };
    struct LftComposite {
        std::shared_ptr<const CoefficientMatrix> S;
        std::shared_ptr<const AnalyticFunction> param;
    };
    struct LftInverse {
        std::shared_ptr<const CoefficientMatrix> S;
        std::shared_ptr<const AnalyticFunction> f;
    };
    using Variant = std::variant<Constant, Polynomial, Rational, BlaschkeProduct, LftComposite, LftInverse>;

    static AnalyticFunction constant(Complex value);
    static AnalyticFunction polynomial(Complex center, std::vector<Complex> coeffs);
    /// Coefficients in v = z - center. Throws InputError if den is zero.
    static AnalyticFunction rational(Complex center, std::vector<Complex> poly, std::size_t shift,
                                     std::vector<Complex> num, std::vector<Complex> den);
    /// Throws InputError unless |gamma| = 1 and every zero lies in |z| < 1 - 1e-12.
    static AnalyticFunction blaschke(Complex gamma, std::vector<Complex> zeros);
    static AnalyticFunction lft(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction param);
    static AnalyticFunction lft_inverse(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction f);

    const Variant& variant() const noexcept { return v_; }
    std::string_view kind() const noexcept;

    /// Pointwise value. Throws DomainError at a pole.
    Complex eval(Complex z) const;

    /// Taylor coefficients f^{(j)}(center)/j!, j = 0..order.
    Jet jet_at(Complex center, std::size_t order) const;

private:
    explicit AnalyticFunction(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

inline Complex fn_eval(const AnalyticFunction& f, Complex z) { return f.eval(z); }
inline Jet fn_jet_at(const AnalyticFunction& f, Complex center, std::size_t order)
{
    return f.jet_at(center, order);
}

} // namespace schurbd

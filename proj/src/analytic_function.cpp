#include "schurbd/analytic_function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace schurbd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool vanishes(Complex den, double ref) { return !(std::abs(den) > 1e-14 * (1.0 + ref)); }

// Value and sum of term moduli of sum_j c[j] u^j.
std::pair<Complex, double> horner(const std::vector<Complex>& c, Complex u)
{
    Complex acc = 0.0;
    double mag = 0.0;
    const double au = std::abs(u);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * u + *it;
        mag = mag * au + std::abs(*it);
    }
    return {acc, mag};
}

Jet jet_horner(const std::vector<Complex>& c, const Jet& u)
{
    Jet acc = Jet::constant(u.center(), u.order(), 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * u + *it;
    }
    return acc;
}

} // namespace

AnalyticFunction AnalyticFunction::constant(Complex value) { return AnalyticFunction(Constant{value}); }

AnalyticFunction AnalyticFunction::polynomial(Complex center, std::vector<Complex> coeffs)
{
    if (coeffs.empty()) {
        coeffs.push_back(0.0);
    }
    return AnalyticFunction(Polynomial{center, std::move(coeffs)});
}

AnalyticFunction AnalyticFunction::rational(Complex center, std::vector<Complex> poly, std::size_t shift,
                                            std::vector<Complex> num, std::vector<Complex> den)
{
    bool zero = true;
    for (auto x : den) {
        zero = zero && x == Complex(0.0);
    }
    if (zero) {
        throw InputError("rational: denominator is zero");
    }
    if (num.empty()) {
        num.push_back(0.0);
    }
    return AnalyticFunction(Rational{center, std::move(poly), shift, std::move(num), std::move(den)});
}

AnalyticFunction AnalyticFunction::blaschke(Complex gamma, std::vector<Complex> zeros)
{
    if (std::abs(std::abs(gamma) - 1.0) > 1e-12) {
        throw InputError("blaschke: gamma must be unimodular");
    }
    for (auto a : zeros) {
        if (!(std::abs(a) < 1.0 - 1e-12)) {
            throw InputError("blaschke: zeros must lie in the open unit disk");
        }
    }
    return AnalyticFunction(BlaschkeProduct{gamma, std::move(zeros)});
}

AnalyticFunction AnalyticFunction::lft(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction param)
{
    if (!S) {
        throw UsageError("lft: null coefficient matrix");
    }
    return AnalyticFunction(
        LftComposite{std::move(S), std::make_shared<const AnalyticFunction>(std::move(param))});
}

AnalyticFunction AnalyticFunction::lft_inverse(std::shared_ptr<const CoefficientMatrix> S, AnalyticFunction f)
{
    if (!S) {
        throw UsageError("lft_inverse: null coefficient matrix");
    }
    return AnalyticFunction(
        LftInverse{std::move(S), std::make_shared<const AnalyticFunction>(std::move(f))});
}

std::string_view AnalyticFunction::kind() const noexcept
{
    return std::visit(overloaded{
                          [](const Constant&) { return std::string_view("constant"); },
                          [](const Polynomial&) { return std::string_view("polynomial"); },
                          [](const Rational&) { return std::string_view("rational"); },
                          [](const BlaschkeProduct&) { return std::string_view("blaschke"); },
                          [](const LftComposite&) { return std::string_view("lft"); },
                          [](const LftInverse&) { return std::string_view("lft_inverse"); },
                      },
                      v_);
}

Complex AnalyticFunction::eval(Complex z) const
{
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.value; },
            [z](const Polynomial& p) {
                const Complex u = z - p.center;
                Complex acc = 0.0;
                for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
                    acc = acc * u + *it;
                }
                return acc;
            },
            [z](const Rational& r) {
                const Complex u = z - r.center;
                const Complex num = horner(r.num, u).first;
                const auto [den, den_mag] = horner(r.den, u);
                if (vanishes(den, den_mag)) {
                    throw DomainError("rational: evaluation at a pole");
                }
                return horner(r.poly, u).first + std::pow(u, static_cast<int>(r.shift)) * num / den;
            },
            [z](const BlaschkeProduct& b) {
                Complex acc = b.gamma;
                for (auto a : b.zeros) {
                    const Complex den = 1.0 - std::conj(a) * z;
                    if (vanishes(den, std::abs(a) * std::abs(z))) {
                        throw DomainError("blaschke: evaluation at a pole");
                    }
                    acc *= (z - a) / den;
                }
                return acc;
            },
            [z](const LftComposite& l) {
                const SEntries s = l.S->eval(z);
                const Complex e = l.param->eval(z);
                const Complex den = 1.0 - s.d * e;
                if (vanishes(den, std::abs(s.d * e))) {
                    throw DomainError("lft: 1 - d E vanishes");
                }
                return s.a + s.b * s.c * e / den;
            },
            [z](const LftInverse& l) {
                const SEntries s = l.S->eval(z);
                const Complex fa = l.f->eval(z) - s.a;
                const Complex den = s.b * s.c + s.d * fa;
                if (vanishes(den, std::abs(s.b * s.c) + std::abs(s.d * fa))) {
                    throw DomainError("lft inverse: b c + d (f - a) vanishes");
                }
                return fa / den;
            },
        },
        v_);
}

Jet AnalyticFunction::jet_at(Complex center, std::size_t order) const
{
    return std::visit(
        overloaded{
            [&](const Constant& c) { return Jet::constant(center, order, c.value); },
            [&](const Polynomial& p) {
                // Horner over the jet ring with (z - p.center) as the variable.
                const Jet u = Jet::variable(center, order) - p.center;
                Jet acc = Jet::constant(center, order, 0.0);
                for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
                    acc = acc * u + *it;
                }
                return acc;
            },
            [&](const Rational& r) {
                // Work in s = lambda (z - center), lambda a power of two matched
                // to the growth of den, so the division is well scaled and the
                // final rescaling is exact.
                double growth = 1.0;
                for (std::size_t k = 1; k < r.den.size(); ++k) {
                    growth = std::max(growth, std::pow(std::abs(r.den[k]) / std::abs(r.den[0]), 1.0 / k));
                }
                if (!std::isfinite(growth)) {
                    growth = 1.0;
                }
                const double lambda = std::ldexp(1.0, std::ilogb(growth));
                std::vector<Complex> uc(order + 1, 0.0);
                uc[0] = center - r.center;
                if (order > 0) {
                    uc[1] = 1.0 / lambda;
                }
                const Jet u(center, std::move(uc));
                const Jet den = jet_horner(r.den, u);
                if (vanishes(den.value(), horner(r.den, center - r.center).second)) {
                    throw DomainError("rational: jet requested at a pole");
                }
                Jet um = Jet::constant(center, order, 1.0);
                for (std::size_t k = 0; k < r.shift; ++k) {
                    um = um * u;
                }
                const Jet js = jet_horner(r.poly, u) + um * (jet_horner(r.num, u) / den);
                std::vector<Complex> out(order + 1);
                for (std::size_t k = 0; k <= order; ++k) {
                    out[k] = std::ldexp(1.0, static_cast<int>(k) * std::ilogb(lambda)) * js[k];
                }
                return Jet(center, std::move(out));
            },
            [&](const BlaschkeProduct& b) {
                const Jet z = Jet::variable(center, order);
                Jet acc = Jet::constant(center, order, b.gamma);
                for (auto a : b.zeros) {
                    const Jet den = 1.0 - z * std::conj(a);
                    if (vanishes(den.value(), std::abs(a) * std::abs(center))) {
                        throw DomainError("blaschke: jet requested at a pole");
                    }
                    acc = acc * ((z - a) / den);
                }
                return acc;
            },
            [&](const LftComposite& l) {
                const SJets s = l.S->jets(center, order);
                const Jet e = l.param->jet_at(center, order);
                const Jet den = 1.0 - s.d * e;
                return s.a + (s.b * s.c * e) / den;
            },
            [&](const LftInverse& l) {
                const SJets s = l.S->jets(center, order);
                const Jet fa = l.f->jet_at(center, order) - s.a;
                return fa / (s.b * s.c + s.d * fa);
            },
        },
        v_);
}

} // namespace schurbd

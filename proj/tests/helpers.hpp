#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "schurbd/common.hpp"
#include "schurbd/jet.hpp"

namespace testutil {

using schurbd::Complex;

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, scale);
    return {g(rng), g(rng)};
}

inline schurbd::Jet random_jet(std::mt19937_64& rng, Complex center, std::size_t order)
{
    std::vector<Complex> c(order + 1);
    for (auto& x : c) {
        x = random_complex(rng);
    }
    return schurbd::Jet(center, c);
}

inline double max_diff(const schurbd::Jet& a, const std::vector<Complex>& b)
{
    double m = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        m = std::max(m, std::abs(a[j] - b[j]));
    }
    return m;
}

inline double max_diff(const schurbd::CMatrix& a, const schurbd::CMatrix& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

inline schurbd::CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows)
{
    schurbd::CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto r : rows) {
        Eigen::Index k = 0;
        for (auto x : r) {
            m(i, k++) = x;
        }
        ++i;
    }
    return m;
}

inline Complex random_unimodular(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
    return std::polar(1.0, u(rng));
}

} // namespace testutil

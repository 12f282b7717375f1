#pragma once

#include <cmath>
#include <cstddef>

#include "aewalk/angles.hpp"

namespace aewalk {

// First-kind Gauss-Chebyshev rule: int_{-1}^{1} F(u) du / sqrt(1-u^2).
template <class T, class F>
T gauss_chebyshev(F&& f, std::size_t nodes)
{
    T acc{};
    const double h = pi / static_cast<double>(nodes);
    for (std::size_t i = 0; i < nodes; ++i) acc += f(std::cos((static_cast<double>(i) + 0.5) * h));
    return acc * h;
}

struct QuadratureResult {
    cplx value;
    std::size_t nodes;
    double change;  // |I(2N) - I(N)| at acceptance
};

// Doubles the node count from 16 until successive values agree to `tol`;
// throws NumericError past `max_nodes`.
template <class F>
QuadratureResult gauss_chebyshev_adaptive(F&& f, double tol, std::size_t max_nodes = std::size_t{1} << 20)
{
    std::size_t n = 16;
    cplx prev = gauss_chebyshev<cplx>(f, n);
    while (n < max_nodes) {
        n *= 2;
        const cplx next = gauss_chebyshev<cplx>(f, n);
        const double change = std::abs(next - prev);
        if (change <= tol) return {next, n, change};
        prev = next;
    }
    throw NumericError("Gauss-Chebyshev quadrature did not converge");
}

}  // namespace aewalk

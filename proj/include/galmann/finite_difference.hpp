#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace galmann {

// Fornberg's recursion: weights w such that sum_i w[i] f(nodes[i])
// approximates the m-th derivative of f at x0, at the maximal order the
// node set allows.
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m);

// m-th derivative of uniformly spaced samples at every index, using
// 6-point stencils (centered where possible, shifted at the edges).
// Requires f.size() >= 6.
std::vector<double> fd_derivative(std::span<const double> f, double h, int m);

// Classic 4th-order central first-derivative stencil. Pre: 2 <= i <= n-3.
inline double central_diff5(std::span<const double> f, double h, std::size_t i) {
    return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
}

}  // namespace galmann

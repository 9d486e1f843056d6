#include "galmann/finite_difference.hpp"

#include <algorithm>
#include <stdexcept>

namespace galmann {

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int m) {
    const int n = static_cast<int>(nodes.size());
    if (n == 0 || m < 0 || m >= n) throw std::invalid_argument("fornberg_weights: bad arguments");

    // c[j][k]: weight of node j for the k-th derivative, built incrementally
    // over node prefixes (Fornberg, Math. Comp. 51, 1988).
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }

    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

std::vector<double> fd_derivative(std::span<const double> f, double h, int m) {
    constexpr int window = 6;
    const int n = static_cast<int>(f.size());
    if (n < window) throw std::invalid_argument("fd_derivative: needs at least 6 samples");

    std::vector<double> nodes(window), out(f.size());
    for (int i = 0; i < n; ++i) {
        const int start = std::clamp(i - 2, 0, n - window);
        for (int j = 0; j < window; ++j) nodes[j] = (start + j - i) * h;
        const std::vector<double> w = fornberg_weights(0.0, nodes, m);
        double acc = 0.0;
        for (int j = 0; j < window; ++j) acc += w[j] * f[start + j];
        out[i] = acc;
    }
    return out;
}

}  // namespace galmann

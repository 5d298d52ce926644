#ifndef OPINT_DDIFF_HPP
#define OPINT_DDIFF_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "funcmodel.hpp"

namespace opint {

using NodeList = std::vector<double>;

/// Grouping of near-coincident nodes. Two nodes share a group iff they are
/// chain-linked by gaps below the threshold; each group is collapsed onto
/// its mean for confluent evaluation.
struct ClusterPartition {
    std::vector<std::vector<std::size_t>> groups;  // indices into the sorted nodes
    std::vector<double> representatives;           // group means, ascending
};

inline double cluster_threshold(const NodeList& xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return 1e-6 * (1.0 + m);
}

/// Partition sorted copies of the nodes by chained gaps <= threshold.
inline ClusterPartition cluster_nodes(const NodeList& xs) {
    if (xs.empty()) throw Error("empty node list");
    for (double x : xs)
        if (!std::isfinite(x)) throw Error("non-finite node");

    NodeList sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const double tau = cluster_threshold(xs);

    ClusterPartition part;
    std::vector<std::size_t> group{0};
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] <= tau) {
            group.push_back(i);
        } else {
            part.groups.push_back(group);
            group = {i};
        }
    }
    part.groups.push_back(group);
    for (const auto& g : part.groups) {
        double mean = 0.0;
        for (std::size_t idx : g) mean += sorted[idx];
        part.representatives.push_back(mean / double(g.size()));
    }
    return part;
}

namespace detail {

// Sorted node list with every cluster collapsed onto its representative.
inline NodeList confluent_nodes(const NodeList& xs) {
    const ClusterPartition part = cluster_nodes(xs);
    NodeList z;
    z.reserve(xs.size());
    for (std::size_t g = 0; g < part.groups.size(); ++g)
        for (std::size_t k = 0; k < part.groups[g].size(); ++k)
            z.push_back(part.representatives[g]);
    return z;
}

// Divided differences of monomials are complete homogeneous symmetric
// polynomials: (x^m)^[n](xs) = h_{m-n}(x_0,...,x_n). Evaluating the
// coefficient sum this way avoids the catastrophic cancellation of the
// Newton recursion when the polynomial degree is near or below n, and gives
// exactly 0 for degree < n.
inline double polynomial_divided_difference(const std::vector<double>& coeffs,
                                            const NodeList& sorted_nodes) {
    const int n = static_cast<int>(sorted_nodes.size()) - 1;
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree < n) return 0.0;
    const int top = degree - n;  // highest h_k needed
    // h[k] accumulates h_k over the nodes seen so far
    std::vector<double> h(static_cast<std::size_t>(top) + 1, 0.0);
    h[0] = 1.0;
    for (double x : sorted_nodes)
        for (int k = 1; k <= top; ++k) h[std::size_t(k)] += x * h[std::size_t(k) - 1];
    double acc = 0.0;
    for (int k = 0; k <= top; ++k) acc += coeffs[std::size_t(n + k)] * h[std::size_t(k)];
    return acc;
}

} // namespace detail

/// Divided difference f^[n](x_0,...,x_n), n = xs.size()-1.
///
/// Nodes are sorted and near-coincident clusters collapsed, then a confluent
/// Newton table is evaluated: entries over exactly equal nodes come from
/// f^(m)(x)/m!, separated entries from the recursion. Sorting makes the
/// value invariant under input permutation bit-for-bit.
inline double divided_difference(const FunctionModel& f, const NodeList& xs) {
    if (f.kind() == FunctionModel::Kind::Polynomial) {
        NodeList sorted = xs;
        for (double x : sorted)
            if (!std::isfinite(x)) throw Error("non-finite node");
        if (sorted.empty()) throw Error("empty node list");
        std::sort(sorted.begin(), sorted.end());
        return detail::polynomial_divided_difference(f.polynomial_coefficients(), sorted);
    }

    const NodeList z = detail::confluent_nodes(xs);
    const std::size_t m = z.size();

    // largest run of equal nodes decides the derivative order needed
    std::size_t longest = 1, run = 1;
    for (std::size_t i = 1; i < m; ++i) {
        run = (z[i] == z[i - 1]) ? run + 1 : 1;
        longest = std::max(longest, run);
    }
    if (static_cast<int>(longest) - 1 > f.max_order())
        throw OrderExceeded("confluent evaluation needs derivative order " +
                            std::to_string(longest - 1));

    // dd[i] holds the current diagonal f[z_i,...,z_{i+len}]
    std::vector<double> dd(m);
    for (std::size_t i = 0; i < m; ++i) dd[i] = f.eval_deriv(0, z[i]);
    double factorial = 1.0;
    for (std::size_t len = 1; len < m; ++len) {
        factorial *= double(len);
        for (std::size_t i = 0; i + len < m; ++i) {
            const std::size_t j = i + len;
            if (z[i] == z[j])
                dd[i] = f.eval_deriv(static_cast<int>(len), z[i]) / factorial;
            else
                dd[i] = (dd[i + 1] - dd[i]) / (z[j] - z[i]);
        }
    }
    return dd[0];
}

namespace detail {

// 32-point Gauss-Legendre rule on [0,1], nodes/weights by Newton iteration
// on the Legendre recurrence; computed once.
struct GaussLegendre32 {
    std::array<double, 32> node{};
    std::array<double, 32> weight{};

    GaussLegendre32() {
        constexpr int n = 32;
        for (int i = 0; i < n; ++i) {
            // Chebyshev initial guess on [-1,1]
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            node[i] = 0.5 * (1.0 + x);
            weight[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 0.5 * 2/((1-x^2)dp^2)
        }
    }
};

inline const GaussLegendre32& gl32() {
    static const GaussLegendre32 rule;
    return rule;
}

} // namespace detail

/// Independent quadrature evaluation of the simplex-integral form of f^[n]:
/// the integral of f^(n)(sum_j s_j x_j) over the standard simplex
/// {s_j >= 0, sum_{j>=1} s_j <= 1}, s_0 = 1 - sum. Iterated 32-point
/// Gauss-Legendre, n <= 3.
inline double dd_simplex_oracle(const FunctionModel& f, const NodeList& xs) {
    if (xs.empty()) throw Error("empty node list");
    const int n = static_cast<int>(xs.size()) - 1;
    if (n > 3) throw UnsupportedOrder("simplex oracle supports n <= 3");
    if (n > f.max_order()) throw OrderExceeded("oracle needs f^(n)");
    if (n == 0) return f.eval_deriv(0, xs[0]);

    const auto& gl = detail::gl32();
    const double x0 = xs[0];

    if (n == 1) {
        double acc = 0.0;
        for (int a = 0; a < 32; ++a) {
            const double s1 = gl.node[a];
            acc += gl.weight[a] * f.eval_deriv(1, (1.0 - s1) * x0 + s1 * xs[1]);
        }
        return acc;
    }
    if (n == 2) {
        double acc = 0.0;
        for (int a = 0; a < 32; ++a) {
            const double s1 = gl.node[a];
            const double r1 = 1.0 - s1;
            double inner = 0.0;
            for (int b = 0; b < 32; ++b) {
                const double s2 = r1 * gl.node[b];
                const double s0 = 1.0 - s1 - s2;
                inner += gl.weight[b] * f.eval_deriv(2, s0 * x0 + s1 * xs[1] + s2 * xs[2]);
            }
            acc += gl.weight[a] * r1 * inner;
        }
        return acc;
    }
    double acc = 0.0;
    for (int a = 0; a < 32; ++a) {
        const double s1 = gl.node[a];
        const double r1 = 1.0 - s1;
        double mid = 0.0;
        for (int b = 0; b < 32; ++b) {
            const double s2 = r1 * gl.node[b];
            const double r2 = 1.0 - s1 - s2;
            double inner = 0.0;
            for (int c = 0; c < 32; ++c) {
                const double s3 = r2 * gl.node[c];
                const double s0 = 1.0 - s1 - s2 - s3;
                inner += gl.weight[c] *
                         f.eval_deriv(3, s0 * x0 + s1 * xs[1] + s2 * xs[2] + s3 * xs[3]);
            }
            mid += gl.weight[b] * r2 * inner;
        }
        acc += gl.weight[a] * r1 * mid;
    }
    return acc;
}

/// Residual of the slot-j recursion identity
///   f^[n](xs) * (x_{j-1} - x_j)
///     = f^[n-1](xs without x_j) - f^[n-1](xs without x_{j-1}),
/// both sides evaluated independently. Slots are 1-based, 1 <= j <= n.
inline double dd_recursion_residual(const FunctionModel& f, const NodeList& xs, int j) {
    const int n = static_cast<int>(xs.size()) - 1;
    if (n < 1) throw Error("recursion identity needs order >= 1");
    if (j < 1 || j > n) throw Error("slot out of range");

    const double lhs = divided_difference(f, xs) * (xs[j - 1] - xs[j]);

    NodeList drop_j = xs;
    drop_j.erase(drop_j.begin() + j);
    NodeList drop_jm1 = xs;
    drop_jm1.erase(drop_jm1.begin() + (j - 1));

    const double rhs = divided_difference(f, drop_j) - divided_difference(f, drop_jm1);
    return std::abs(lhs - rhs);
}

/// Residual of the product expansion
///   f^[n](xs) g(x_0) = (gf)^[n](xs) - f(x_n) g^[n](xs)
///                      - sum_{l=1}^{n-1} g^[l](x_0..x_l) f^[n-l](x_l..x_n),
/// with (gf) formed through the Leibniz rule.
inline double dd_product_residual(const FunctionModel& f, const FunctionModel& g,
                                  const NodeList& xs) {
    const int n = static_cast<int>(xs.size()) - 1;
    if (n < 1) throw Error("product identity needs order >= 1");
    if (n > f.max_order() || n > g.max_order())
        throw OrderExceeded("product identity needs derivatives to order n");

    const FunctionModel gf = FunctionModel::product(f, g, n);

    const double lhs = divided_difference(f, xs) * g.eval_deriv(0, xs[0]);
    double rhs = divided_difference(gf, xs) -
                 f.eval_deriv(0, xs[n]) * divided_difference(g, xs);
    for (int l = 1; l <= n - 1; ++l) {
        const NodeList head(xs.begin(), xs.begin() + l + 1);
        const NodeList tail(xs.begin() + l, xs.end());
        rhs -= divided_difference(g, head) * divided_difference(f, tail);
    }
    return std::abs(lhs - rhs);
}

} // namespace opint

#endif

#ifndef OPINT_PERTURB_HPP
#define OPINT_PERTURB_HPP

#include <cmath>
#include <map>
#include <vector>

#include "errors.hpp"
#include "funcmodel.hpp"
#include "linalg.hpp"
#include "moi.hpp"

namespace opint {

/// The path t -> f(A + tK) and its derivatives.
struct PerturbationPath {
    HermitianMatrix a;
    HermitianMatrix k;
    FunctionModel f;

    PerturbationPath(HermitianMatrix a_, HermitianMatrix k_, FunctionModel f_)
        : a(std::move(a_)), k(std::move(k_)), f(std::move(f_)) {
        if (a.dim() != k.dim()) throw DimMismatch("A and K dimensions differ");
    }

    std::size_t dim() const { return a.dim(); }

    HermitianMatrix at(double t) const { return a + t * k; }
};

struct DerivativeReport {
    int order = 0;
    double t = 0.0;
    ComplexMatrix moi_value;
    ComplexMatrix fd_value;
    std::map<double, double> schatten_rel_errors;
};

/// phi(t) = f(A+tK) - f(A).
inline ComplexMatrix phi(const PerturbationPath& path, double t) {
    const auto f0 = [&](double x) { return path.f.eval_deriv(0, x); };
    return mat_func_apply(f0, eigh(path.at(t))) - mat_func_apply(f0, eigh(path.a));
}

/// phi^(k)(t) = k! Gamma^{(A+tK)^{k+1}}(f^[k])(K,...,K).
inline ComplexMatrix derivative_moi(const PerturbationPath& path, int k, double t) {
    if (k < 1) throw Error("derivative order must be >= 1");
    if (k > path.f.max_order()) throw OrderExceeded("derivative order exceeds f.max_order");
    const EigenDecomposition e = eigh(path.at(t));
    MOIRequest req{DividedDifferenceKernel{path.f, k},
                   std::vector<EigenDecomposition>(static_cast<std::size_t>(k) + 1, e),
                   std::vector<ComplexMatrix>(static_cast<std::size_t>(k), path.k.matrix())};
    ComplexMatrix g = moi_apply(req);
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= double(i);
    return cplx(factorial) * g;
}

inline double default_fd_step(int k) { return (k <= 2) ? 1e-3 : 5e-3; }

namespace detail {

// lowest-order symmetric stencils, O(h^2) truncation
inline std::vector<std::pair<int, double>> central_stencil(int k) {
    switch (k) {
        case 1: return {{-1, -0.5}, {1, 0.5}};
        case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
        case 3: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
        case 4: return {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}};
        default: throw Error("finite differences support k <= 4");
    }
}

inline ComplexMatrix fd_once(const PerturbationPath& path, int k, double t, double h) {
    const auto f0 = [&](double x) { return path.f.eval_deriv(0, x); };
    ComplexMatrix acc(path.dim(), path.dim());
    for (const auto& [offset, coeff] : central_stencil(k))
        acc = acc + cplx(coeff) * mat_func_apply(f0, eigh(path.at(t + offset * h)));
    return cplx(std::pow(h, -k)) * acc;
}

} // namespace detail

/// k-th derivative of t -> f(A+tK) by symmetric central differences with one
/// Richardson step (h, h/2): (4 D(h/2) - D(h)) / 3, O(h^4) truncation.
inline ComplexMatrix derivative_fd(const PerturbationPath& path, int k, double t, double h) {
    if (k < 1 || k > 4) throw Error("finite differences support 1 <= k <= 4");
    if (!(h > 0.0)) throw Error("step must be positive");
    const ComplexMatrix coarse = detail::fd_once(path, k, t, h);
    const ComplexMatrix fine = detail::fd_once(path, k, t, h / 2.0);
    return cplx(1.0 / 3.0) * (cplx(4.0) * fine - coarse);
}

inline DerivativeReport compare_derivatives(const PerturbationPath& path, int k, double t,
                                            const std::vector<double>& p_values,
                                            double h = 0.0) {
    if (h <= 0.0) h = default_fd_step(k);
    DerivativeReport rep;
    rep.order = k;
    rep.t = t;
    rep.moi_value = derivative_moi(path, k, t);
    rep.fd_value = derivative_fd(path, k, t, h);
    for (double p : p_values) {
        const double denom = schatten_norm(rep.moi_value, p);
        const double err = schatten_norm(rep.moi_value - rep.fd_value, p);
        rep.schatten_rel_errors[p] = err / (1.0 + denom);
    }
    return rep;
}

/// Residual, in Schatten-p norm, of the change-of-spectrum formula: replacing
/// A by B in slot j of an order-(n-1) contraction equals an order-n
/// contraction with operand B-A inserted at slot j.
inline double perturbation_formula_residual(const std::vector<HermitianMatrix>& as,
                                            const HermitianMatrix& a, const HermitianMatrix& b,
                                            const FunctionModel& f, int n, int j,
                                            const std::vector<ComplexMatrix>& ks, double p) {
    if (n < 2) throw Error("perturbation formula needs n >= 2");
    if (j < 1 || j > n) throw Error("slot out of range");
    if (as.size() != static_cast<std::size_t>(n) - 1 || ks.size() != static_cast<std::size_t>(n) - 1)
        throw DimMismatch("expected n-1 background operators and operands");
    if (n > f.max_order()) throw OrderExceeded("formula needs f^(n)");

    std::vector<EigenDecomposition> background;
    background.reserve(as.size());
    for (const auto& m : as) background.push_back(eigh(m));
    const EigenDecomposition ea = eigh(a);
    const EigenDecomposition eb = eigh(b);

    // spectra with B (resp. A) in slot j, n slots total
    std::vector<EigenDecomposition> with_b, with_a, with_ba;
    for (int k = 0; k < j - 1; ++k) {
        with_b.push_back(background[static_cast<std::size_t>(k)]);
        with_a.push_back(background[static_cast<std::size_t>(k)]);
        with_ba.push_back(background[static_cast<std::size_t>(k)]);
    }
    with_b.push_back(eb);
    with_a.push_back(ea);
    with_ba.push_back(eb);
    with_ba.push_back(ea);
    for (int k = j - 1; k < n - 1; ++k) {
        with_b.push_back(background[static_cast<std::size_t>(k)]);
        with_a.push_back(background[static_cast<std::size_t>(k)]);
        with_ba.push_back(background[static_cast<std::size_t>(k)]);
    }

    const DividedDifferenceKernel low{f, n - 1};
    const ComplexMatrix lhs =
        moi_apply({low, with_b, ks}) - moi_apply({low, with_a, ks});

    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < j - 1; ++k) ops.push_back(ks[static_cast<std::size_t>(k)]);
    ops.push_back(b.matrix() - a.matrix());
    for (int k = j - 1; k < n - 1; ++k) ops.push_back(ks[static_cast<std::size_t>(k)]);
    const ComplexMatrix rhs = moi_apply({DividedDifferenceKernel{f, n}, with_ba, ops});

    return schatten_norm(lhs - rhs, p);
}

/// Spectral enclosure for sup-norm reporting: eigenvalue ranges of A and
/// A+K, widened by the spectral norm of K.
inline Interval spectral_hull(const PerturbationPath& path) {
    const EigenDecomposition e0 = eigh(path.a);
    const EigenDecomposition e1 = eigh(path.at(1.0));
    const double kn = spectral_norm(path.k.matrix());
    const double lo = std::min(e0.eigenvalues.front(), e1.eigenvalues.front()) - kn;
    const double hi = std::max(e0.eigenvalues.back(), e1.eigenvalues.back()) + kn;
    return Interval(lo, hi);
}

struct TaylorRemainder {
    ComplexMatrix direct;  // f(A+K) - f(A) - sum of derivative terms
    ComplexMatrix moi;     // Gamma^{A+K,A,...,A}(f^[n])(K,...,K)
    double ratio = 0.0;    // ||direct||_p / (sup|f^(n)| ||K||_{np}^n)
};

/// Order-n Taylor remainder of t -> f(A+tK) at t=1, computed both directly
/// and through the mixed-spectra contraction, plus the normalized size used
/// to study the constant in the Schatten estimate.
inline TaylorRemainder taylor_remainder(const PerturbationPath& path, int n, double p) {
    if (n < 2) throw Error("Taylor remainder needs n >= 2");
    if (n > path.f.max_order()) throw OrderExceeded("remainder needs f^(n)");

    TaylorRemainder out;
    out.direct = phi(path, 1.0);
    double factorial = 1.0;
    for (int k = 1; k <= n - 1; ++k) {
        factorial *= double(k);
        out.direct = out.direct - cplx(1.0 / factorial) * derivative_moi(path, k, 0.0);
    }

    std::vector<EigenDecomposition> spectra;
    spectra.push_back(eigh(path.at(1.0)));
    const EigenDecomposition ea = eigh(path.a);
    for (int k = 0; k < n; ++k) spectra.push_back(ea);
    out.moi = moi_apply({DividedDifferenceKernel{path.f, n}, spectra,
                         std::vector<ComplexMatrix>(static_cast<std::size_t>(n), path.k.matrix())});

    const double sup = sup_norm_estimate(path.f, n, spectral_hull(path));
    const double knorm = schatten_norm(path.k.matrix(), double(n) * p);
    const double denom = sup * std::pow(knorm, n);
    const double numer = schatten_norm(out.direct, p);
    if (denom < 1e-300) {
        // f^(n) (or K) vanishes identically; the estimate forces a zero
        // remainder. Accept rounding residue, reject anything substantial.
        const double residue_scale = 1.0 + schatten_norm(phi(path, 1.0), p);
        if (numer > 1e-10 * residue_scale)
            throw DivisionDegenerate("remainder ratio denominator underflowed");
        out.ratio = 0.0;
    } else {
        out.ratio = numer / denom;
    }
    return out;
}

/// Empirical constant of the Schatten bound: the contraction norm over
/// sup|f^(n)| times the product of the operand np-norms.
inline double boundedness_ratio(const FunctionModel& f, int n,
                                const std::vector<EigenDecomposition>& spectra,
                                const std::vector<ComplexMatrix>& operands, double p) {
    if (n > f.max_order()) throw OrderExceeded("ratio needs f^(n)");
    const ComplexMatrix gamma = moi_apply({DividedDifferenceKernel{f, n}, spectra, operands});

    double lo = spectra.front().eigenvalues.front();
    double hi = spectra.front().eigenvalues.back();
    for (const auto& e : spectra) {
        lo = std::min(lo, e.eigenvalues.front());
        hi = std::max(hi, e.eigenvalues.back());
    }
    double denom = sup_norm_estimate(f, n, Interval(lo, hi));
    for (const auto& x : operands) denom *= schatten_norm(x, double(n) * p);
    if (denom < 1e-300)
        throw DivisionDegenerate("boundedness ratio denominator underflowed");
    return schatten_norm(gamma, p) / denom;
}

struct ContinuityReport {
    std::vector<double> increments;  // ||phi^(k)(t_{i+1}) - phi^(k)(t_i)||_p
    double max_increment = 0.0;
};

/// Schatten-p increments of phi^(k) along a t-grid; for continuously
/// differentiable f the max increment shrinks with the grid step.
inline ContinuityReport continuity_sweep(const PerturbationPath& path, int k,
                                         const std::vector<double>& t_grid, double p) {
    if (t_grid.size() < 2) throw Error("sweep needs at least two grid points");
    ContinuityReport rep;
    ComplexMatrix prev = derivative_moi(path, k, t_grid.front());
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        ComplexMatrix cur = derivative_moi(path, k, t_grid[i]);
        const double inc = schatten_norm(cur - prev, p);
        rep.increments.push_back(inc);
        rep.max_increment = std::max(rep.max_increment, inc);
        prev = std::move(cur);
    }
    return rep;
}

} // namespace opint

#endif

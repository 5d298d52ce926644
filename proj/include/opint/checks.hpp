#ifndef OPINT_CHECKS_HPP
#define OPINT_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ddiff.hpp"
#include "moi.hpp"
#include "perturb.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace opint {

inline CounterRng trial_rng(const ExperimentConfig& cfg, int trial) {
    return CounterRng(cfg.seed ^ static_cast<std::uint64_t>(trial));
}

namespace detail {

inline NodeList random_nodes(CounterRng& rng, int count, double lo, double hi,
                             double min_gap) {
    NodeList xs;
    while (true) {
        xs.clear();
        for (int i = 0; i < count; ++i) xs.push_back(lo + (hi - lo) * rng.uniform());
        NodeList sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        bool ok = true;
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] - sorted[i - 1] < min_gap) ok = false;
        if (ok) return xs;
    }
}

inline GridKernel random_grid(CounterRng& rng, const std::vector<std::size_t>& dims) {
    GridKernel g;
    g.dims = dims;
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    g.values.resize(total);
    for (auto& v : g.values) v = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    return g;
}

inline TensorProductKernel random_tensor_kernel(CounterRng& rng, int order, std::size_t d) {
    TensorProductKernel tp;
    for (int k = 0; k <= order; ++k) {
        std::vector<cplx> fac(d);
        for (auto& v : fac) v = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        tp.factors.push_back(std::move(fac));
    }
    return tp;
}

// Random polynomial in A of degree <= 3, a canonical commuting operand.
inline ComplexMatrix random_polynomial_in(CounterRng& rng, const HermitianMatrix& a) {
    const ComplexMatrix& m = a.matrix();
    ComplexMatrix acc = ComplexMatrix::identity(a.dim());
    ComplexMatrix out(a.dim(), a.dim());
    for (int deg = 0; deg <= 3; ++deg) {
        out = out + cplx(2.0 * rng.uniform() - 1.0) * acc;
        acc = acc * m;
    }
    return out;
}

// Independent evaluation path for the lemma oracle: spectral projections
// multiplied in the original basis, no shared code with moi_apply's
// rotated-contraction loop.
inline ComplexMatrix moi_brute_force(const MOIKernel& kernel,
                                     const std::vector<EigenDecomposition>& spectra,
                                     const std::vector<ComplexMatrix>& operands) {
    const int n = kernel_order(kernel);
    const std::size_t d = spectra.front().dim();
    detail::KernelEvaluator phi(kernel, spectra);

    std::vector<std::vector<ComplexMatrix>> projections(spectra.size());
    for (std::size_t k = 0; k < spectra.size(); ++k) {
        const ComplexMatrix& u = spectra[k].unitary;
        for (std::size_t i = 0; i < d; ++i) {
            ComplexMatrix p(d, d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    p(r, c) = u(r, i) * std::conj(u(c, i));
            projections[k].push_back(std::move(p));
        }
    }

    ComplexMatrix acc(d, d);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n) + 1, 0);
    while (true) {
        ComplexMatrix term = projections[0][idx[0]];
        for (int k = 0; k < n; ++k)
            term = term * operands[static_cast<std::size_t>(k)] *
                   projections[static_cast<std::size_t>(k) + 1][idx[static_cast<std::size_t>(k) + 1]];
        acc = acc + phi(idx) * term;
        std::size_t pos = idx.size();
        while (pos > 0) {
            if (++idx[pos - 1] < d) break;
            idx[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return acc;
}

} // namespace detail

/// Divided-difference identities: permutation symmetry, coincident collapse,
/// quadrature-oracle agreement, the slot recursion, the product expansion,
/// the uniform bound, and cluster continuity.
inline std::vector<ReportRow> run_ddiff_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const FunctionModel f = cfg.make_function();
    const int n = cfg.order;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        const NodeList xs = detail::random_nodes(rng, n + 1, -2.0, 2.0, 1e-3);

        // permutation symmetry over 20 random shuffles
        {
            const double ref = divided_difference(f, xs);
            double worst = 0.0;
            NodeList perm = xs;
            for (int s = 0; s < 20; ++s) {
                for (std::size_t i = perm.size(); i > 1; --i)
                    std::swap(perm[i - 1], perm[rng.next_u64() % i]);
                worst = std::max(worst, std::abs(divided_difference(f, perm) - ref));
            }
            const double rel = worst / (1.0 + std::abs(ref));
            rows.push_back(make_row(trial, "ddiff.permutation", std::abs(ref), std::abs(ref),
                                    worst, rel, cfg.tolerance("permutation", 1e-9), true,
                                    cfg.seed));
        }
        // coincident collapse f^[n](x,...,x) = f^(n)(x)/n!
        {
            const double x = -3.0 + 6.0 * rng.uniform();
            double factorial = 1.0;
            for (int k = 2; k <= n; ++k) factorial *= double(k);
            const double lhs = divided_difference(f, NodeList(std::size_t(n) + 1, x));
            const double rhs = f.eval_deriv(n, x) / factorial;
            const double abs_err = std::abs(lhs - rhs);
            rows.push_back(make_row(trial, "ddiff.collapse", std::abs(lhs), std::abs(rhs),
                                    abs_err, abs_err / (1.0 + std::abs(rhs)),
                                    cfg.tolerance("collapse", 1e-10), true, cfg.seed));
        }
        // quadrature oracle, n <= 3 only
        if (n <= 3) {
            const double lhs = divided_difference(f, xs);
            const double rhs = dd_simplex_oracle(f, xs);
            const double abs_err = std::abs(lhs - rhs);
            rows.push_back(make_row(trial, "ddiff.oracle", std::abs(lhs), std::abs(rhs), abs_err,
                                    abs_err / (1.0 + std::abs(lhs)),
                                    cfg.tolerance("oracle", 1e-6), true, cfg.seed));
        }
        // slot recursion identity, every slot
        {
            double span = 0.0;
            for (double a : xs)
                for (double b : xs) span = std::max(span, std::abs(a - b));
            const double mag = std::abs(divided_difference(f, xs));
            double worst = 0.0;
            for (int j = 1; j <= n; ++j)
                worst = std::max(worst, dd_recursion_residual(f, xs, j));
            const double scale = 1.0 + mag * span;
            rows.push_back(make_row(trial, "ddiff.recursion", mag, mag, worst, worst / scale,
                                    cfg.tolerance("recursion", 1e-10), true, cfg.seed));
        }
        // product expansion with g = 1/(1+x^2)
        {
            const double res = dd_product_residual(f, FunctionModel::inv_quad(), xs);
            const double scale = 1.0 + std::abs(divided_difference(f, xs));
            rows.push_back(make_row(trial, "ddiff.product", 0.0, 0.0, res, res / scale,
                                    cfg.tolerance("product", 1e-8), true, cfg.seed));
        }
        // uniform bound |f^[n]| <= sup|f^(n)|/n!
        {
            double lo = xs[0], hi = xs[0];
            for (double x : xs) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            double factorial = 1.0;
            for (int k = 2; k <= n; ++k) factorial *= double(k);
            const double lhs = std::abs(divided_difference(f, xs));
            const double bound = sup_norm_estimate(f, n, Interval(lo, hi)) / factorial + 1e-9;
            rows.push_back(make_row(trial, "ddiff.bound", lhs, bound, std::max(0.0, lhs - bound),
                                    std::max(0.0, lhs - bound), cfg.tolerance("bound", 1e-12),
                                    true, cfg.seed));
        }
        // cluster continuity: tight gaps vs exactly coincident nodes
        {
            const double x = -3.0 + 6.0 * rng.uniform();
            NodeList tight(std::size_t(n) + 1);
            for (int i = 0; i <= n; ++i) tight[std::size_t(i)] = x + 1e-4 * i;
            const double a = divided_difference(f, tight);
            const double b = divided_difference(f, NodeList(std::size_t(n) + 1, x));
            const double diff = std::abs(a - b);
            rows.push_back(make_row(trial, "ddiff.cluster", std::abs(a), std::abs(b), diff,
                                    diff / (1.0 + std::abs(b)), cfg.tolerance("cluster", 1e-3),
                                    true, cfg.seed));
        }
    }
    return rows;
}

/// Build f(A) from precomputed factor values on the eigenvalues.
inline ComplexMatrix mat_func_chain(const std::vector<cplx>& values,
                                    const EigenDecomposition& e) {
    const std::size_t d = e.dim();
    ComplexMatrix diag(d, d);
    for (std::size_t i = 0; i < d; ++i) diag(i, i) = values[i];
    return e.unitary * diag * e.unitary.adjoint();
}

/// Elementary-tensor fidelity, the three contraction lemmas, the commuting
/// reduction, and the brute-force summation oracle at small dimension.
inline std::vector<ReportRow> run_moi_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const std::size_t d = cfg.dim;
    const int n = cfg.order;
    const FunctionModel f = cfg.make_function();

    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);

        std::vector<EigenDecomposition> spectra;
        for (int k = 0; k <= n; ++k) spectra.push_back(eigh(random_hermitian(rng, d)));
        std::vector<ComplexMatrix> operands;
        for (int k = 0; k < n; ++k) operands.push_back(random_matrix(rng, d));

        double opscale = 1.0;
        for (const auto& x : operands) opscale = std::max(opscale, x.frobenius_norm());

        // elementary tensors: contraction equals the direct product chain
        {
            const TensorProductKernel tp = detail::random_tensor_kernel(rng, n, d);
            const ComplexMatrix lhs = moi_apply({tp, spectra, operands});
            ComplexMatrix rhs = mat_func_chain(tp.factors[0], spectra[0]);
            for (int k = 0; k < n; ++k)
                rhs = rhs * operands[std::size_t(k)] *
                      mat_func_chain(tp.factors[std::size_t(k) + 1], spectra[std::size_t(k) + 1]);
            const double abs_err = (lhs - rhs).frobenius_norm();
            const double rel = abs_err / (1.0 + rhs.frobenius_norm());
            rows.push_back(make_row(trial, "moi.tensor", lhs.frobenius_norm(),
                                    rhs.frobenius_norm(), abs_err, rel,
                                    cfg.tolerance("tensor", 1e-10), true, cfg.seed));
        }
        // composition lemma, every interior pair slot
        if (n >= 1) {
            const GridKernel phi1 = detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n) + 1, d));
            const GridKernel phi2 = detail::random_grid(rng, {d, d});
            double worst = 0.0;
            for (int j = 1; j <= n; ++j)
                worst = std::max(worst, moi_compose_check(phi1, phi2, j, spectra, operands));
            rows.push_back(make_row(trial, "moi.compose", 0.0, 0.0, worst, worst / opscale,
                                    cfg.tolerance("compose", 1e-10), true, cfg.seed));
        }
        // split lemma, every shared slot
        if (n >= 2) {
            double worst = 0.0;
            for (int j = 2; j <= n; ++j) {
                const GridKernel phi1 =
                    detail::random_grid(rng, std::vector<std::size_t>(std::size_t(j), d));
                const GridKernel phi2 =
                    detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n + 2 - j), d));
                worst = std::max(worst, moi_split_check(phi1, phi2, j, spectra, operands));
            }
            rows.push_back(make_row(trial, "moi.split", 0.0, 0.0, worst, worst / opscale,
                                    cfg.tolerance("split", 1e-10), true, cfg.seed));
        }
        // insertion lemma, every slot
        if (n >= 1) {
            double worst = 0.0;
            for (int j = 1; j <= n + 1; ++j) {
                const GridKernel phi =
                    detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n), d));
                worst = std::max(worst, moi_insert_check(phi, j, spectra, operands));
            }
            rows.push_back(make_row(trial, "moi.insert", 0.0, 0.0, worst, worst / opscale,
                                    cfg.tolerance("insert", 1e-10), true, cfg.seed));
        }
        // commuting reduction with polynomials in a single A
        {
            const HermitianMatrix a = random_hermitian(rng, d);
            std::vector<ComplexMatrix> zs;
            double zscale = 1.0;
            for (int k = 0; k < n; ++k) {
                zs.push_back(detail::random_polynomial_in(rng, a));
                zscale = std::max(zscale, zs.back().frobenius_norm());
            }
            const double res = moi_commuting_check(f, n, a, zs);
            const double scale = std::pow(zscale, n);
            rows.push_back(make_row(trial, "moi.commuting", 0.0, 0.0, res, res / scale,
                                    cfg.tolerance("commuting", 1e-9), true, cfg.seed));
        }
        // independent summation oracle at d=2
        {
            std::vector<EigenDecomposition> small_spec;
            for (int k = 0; k <= n; ++k) small_spec.push_back(eigh(random_hermitian(rng, 2)));
            std::vector<ComplexMatrix> small_ops;
            for (int k = 0; k < n; ++k) small_ops.push_back(random_matrix(rng, 2));
            const GridKernel g =
                detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n) + 1, 2));
            const ComplexMatrix fast = moi_apply({g, small_spec, small_ops});
            const ComplexMatrix brute = detail::moi_brute_force(g, small_spec, small_ops);
            const double abs_err = (fast - brute).frobenius_norm();
            rows.push_back(make_row(trial, "moi.brute", fast.frobenius_norm(),
                                    brute.frobenius_norm(), abs_err,
                                    abs_err / (1.0 + brute.frobenius_norm()),
                                    cfg.tolerance("brute", 1e-12), true, cfg.seed));
        }
    }
    return rows;
}

/// Derivative formula vs the finite-difference oracle, one row per
/// (k, t, p) cell.
inline std::vector<ReportRow> run_derivative_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const FunctionModel f = cfg.make_function();
    const std::vector<double> ts = cfg.t_grid.empty() ? std::vector<double>{0.0, 0.2} : cfg.t_grid;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        PerturbationPath path(random_hermitian(rng, cfg.dim),
                              random_hermitian(rng, cfg.dim, 0.5), f);
        for (int k = 1; k <= cfg.order; ++k) {
            for (double t : ts) {
                const DerivativeReport rep =
                    compare_derivatives(path, k, t, cfg.p_values, cfg.step);
                for (const auto& [p, rel] : rep.schatten_rel_errors) {
                    const double lhs = schatten_norm(rep.moi_value, p);
                    const double rhs = schatten_norm(rep.fd_value, p);
                    rows.push_back(make_row(
                        trial,
                        "derivative.k" + std::to_string(k) + ".t" + format_double(t) + ".p" +
                            format_double(p),
                        lhs, rhs, std::abs(lhs - rhs), rel,
                        cfg.tolerance("derivative", 1e-5), true, cfg.seed));
                }
            }
        }
    }
    return rows;
}

/// Higher-order perturbation formula, every slot.
inline std::vector<ReportRow> run_perturb_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const FunctionModel f = cfg.make_function();
    const int n = std::max(2, cfg.order);

    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        std::vector<HermitianMatrix> as;
        for (int k = 0; k < n - 1; ++k) as.push_back(random_hermitian(rng, cfg.dim));
        const HermitianMatrix a = random_hermitian(rng, cfg.dim);
        const HermitianMatrix b = random_hermitian(rng, cfg.dim);
        std::vector<ComplexMatrix> ks;
        double scale = 1.0 + (b.matrix() - a.matrix()).frobenius_norm();
        for (int k = 0; k < n - 1; ++k) {
            ks.push_back(random_matrix(rng, cfg.dim));
            scale = std::max(scale, 1.0 + ks.back().frobenius_norm());
        }
        const double p = cfg.p_values.empty() ? 2.0 : cfg.p_values.front();

        const std::vector<int> slots = cfg.slot > 0 ? std::vector<int>{cfg.slot} : [&] {
            std::vector<int> all;
            for (int j = 1; j <= n; ++j) all.push_back(j);
            return all;
        }();
        for (int j : slots) {
            const double res = perturbation_formula_residual(as, a, b, f, n, j, ks, p);
            rows.push_back(make_row(trial, "perturb.j" + std::to_string(j), 0.0, 0.0, res,
                                    res / scale, cfg.tolerance("perturb", 1e-9), true,
                                    cfg.seed));
        }
    }
    return rows;
}

/// Taylor remainder identity per trial plus a ratio-stability summary row
/// per Schatten exponent.
inline std::vector<ReportRow> run_taylor_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const FunctionModel f = cfg.make_function();
    const int n = std::max(2, cfg.order);
    const double p = cfg.p_values.empty() ? 2.0 : cfg.p_values.front();

    std::vector<double> ratios;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        PerturbationPath path(random_hermitian(rng, cfg.dim),
                              random_hermitian(rng, cfg.dim, 0.5), f);
        const TaylorRemainder rem = taylor_remainder(path, n, p);
        const double lhs = schatten_norm(rem.direct, p);
        const double rhs = schatten_norm(rem.moi, p);
        const double abs_err = schatten_norm(rem.direct - rem.moi, p);
        const double scale = 1.0 + std::max(lhs, rhs);
        rows.push_back(make_row(trial, "taylor.identity", lhs, rhs, abs_err, abs_err / scale,
                                cfg.tolerance("taylor", 1e-9), true, cfg.seed));
        ratios.push_back(rem.ratio);
    }
    // the estimate is checked as ratio finiteness and max <= 10x median
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double maxr = sorted.back();
    bool finite = true;
    for (double r : ratios)
        if (!std::isfinite(r)) finite = false;
    ReportRow summary = make_row(cfg.trials, "taylor.ratio_stability", maxr, median,
                                 maxr - median, median > 0.0 ? maxr / median : 0.0,
                                 cfg.tolerance("ratio_spread", 10.0), true, cfg.seed);
    summary.pass = finite && (median == 0.0 ? maxr <= 1e-12 : maxr <= summary.tolerance * median);
    rows.push_back(summary);
    return rows;
}

/// Modulus-of-continuity sweep: halving the grid step must shrink the max
/// increment of phi^(k) by the configured factor.
inline std::vector<ReportRow> run_continuity_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const FunctionModel f = cfg.make_function();
    const int k = std::min(cfg.order, 2);
    const double p = cfg.p_values.empty() ? 2.0 : cfg.p_values.front();

    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        PerturbationPath path(random_hermitian(rng, cfg.dim),
                              random_hermitian(rng, cfg.dim, 0.5), f);
        const auto grid = [](double step) {
            std::vector<double> ts;
            for (double t = -1.0; t <= 1.0 + 1e-12; t += step) ts.push_back(t);
            return ts;
        };
        const ContinuityReport coarse = continuity_sweep(path, k, grid(1e-2), p);
        const ContinuityReport fine = continuity_sweep(path, k, grid(5e-3), p);
        const double ratio =
            coarse.max_increment > 0.0 ? fine.max_increment / coarse.max_increment : 0.0;
        rows.push_back(make_row(trial, "continuity.halving", fine.max_increment,
                                coarse.max_increment, fine.max_increment, ratio,
                                cfg.tolerance("continuity", 0.75), true, cfg.seed));
    }
    return rows;
}

/// Boundedness-constant statistics: per-trial ratios plus a running max.
inline std::vector<ReportRow> run_ratio_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const FunctionModel f = cfg.make_function();
    const int n = cfg.order;
    const double p = cfg.p_values.empty() ? 2.0 : cfg.p_values.front();
    const double cap = cfg.tolerance("ratio_cap", 1e9);

    double running_max = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        std::vector<EigenDecomposition> spectra;
        for (int k = 0; k <= n; ++k) spectra.push_back(eigh(random_hermitian(rng, cfg.dim)));
        std::vector<ComplexMatrix> operands;
        for (int k = 0; k < n; ++k) operands.push_back(random_matrix(rng, cfg.dim));
        const double ratio = boundedness_ratio(f, n, spectra, operands, p);
        running_max = std::max(running_max, ratio);
        ReportRow r = make_row(trial, "ratio.trial", ratio, 0.0, 0.0, ratio, cap, true,
                               cfg.seed);
        r.pass = std::isfinite(ratio) && ratio <= cap;
        rows.push_back(r);
    }
    ReportRow summary =
        make_row(cfg.trials, "ratio.max", running_max, 0.0, 0.0, running_max, cap, true, cfg.seed);
    summary.pass = std::isfinite(running_max) && running_max <= cap;
    rows.push_back(summary);
    return rows;
}

/// Eigensolver health: reconstruction and unitarity at the configured dim.
inline std::vector<ReportRow> run_infra_checks(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        CounterRng rng = trial_rng(cfg, trial);
        const HermitianMatrix h = random_hermitian(rng, cfg.dim);
        const EigenDecomposition e = eigh(h);
        ComplexMatrix lam(cfg.dim, cfg.dim);
        for (std::size_t i = 0; i < cfg.dim; ++i) lam(i, i) = e.eigenvalues[i];
        const double recon =
            (e.unitary * lam * e.unitary.adjoint() - h.matrix()).frobenius_norm();
        const double recon_scale = 1.0 + h.matrix().frobenius_norm();
        rows.push_back(make_row(trial, "infra.reconstruction", 0.0, 0.0, recon,
                                recon / recon_scale, cfg.tolerance("reconstruction", 1e-11),
                                true, cfg.seed));
        const double unit =
            (e.unitary.adjoint() * e.unitary - ComplexMatrix::identity(cfg.dim)).frobenius_norm();
        rows.push_back(make_row(trial, "infra.unitarity", 0.0, 0.0, unit,
                                unit / double(cfg.dim), cfg.tolerance("unitarity", 1e-12), true,
                                cfg.seed));
    }
    return rows;
}

/// All checks with a shared config; the CLI `suite` subcommand and the
/// acceptance harness both run this.
inline std::vector<ReportRow> run_suite(const ExperimentConfig& cfg) {
    std::vector<ReportRow> rows;
    const auto append = [&rows](std::vector<ReportRow> more) {
        rows.insert(rows.end(), more.begin(), more.end());
    };

    ExperimentConfig quick = cfg;
    quick.trials = std::min(cfg.trials, 20);

    append(run_infra_checks(quick));
    append(run_ddiff_checks(quick));
    append(run_moi_checks(quick));

    ExperimentConfig deriv = quick;
    deriv.trials = std::min(quick.trials, 2);
    deriv.order = std::min(cfg.order, 3);
    append(run_derivative_checks(deriv));

    append(run_perturb_checks(quick));
    append(run_taylor_checks(quick));

    ExperimentConfig cont = quick;
    cont.trials = std::min(quick.trials, 2);
    append(run_continuity_checks(cont));

    append(run_ratio_checks(quick));
    return rows;
}

} // namespace opint

#endif

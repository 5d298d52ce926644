// Acceptance harness: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "opint/opint.hpp"

using namespace opint;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string worst_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst %.3e", v);
    return buf;
}

// ---- 1. elementary-tensor fidelity ----------------------------------------
void criterion_tensor() {
    const double tol = 1e-10;
    double worst = 0.0;
    int trial_count = 0;
    for (std::size_t d : {2u, 4u, 8u}) {
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 23; ++trial) {
                CounterRng rng(1000u * d + 10u * std::uint64_t(n) + std::uint64_t(trial));
                std::vector<EigenDecomposition> spectra;
                for (int k = 0; k <= n; ++k) spectra.push_back(eigh(random_hermitian(rng, d)));
                std::vector<ComplexMatrix> ops;
                for (int k = 0; k < n; ++k) ops.push_back(random_matrix(rng, d));
                const TensorProductKernel tp = detail::random_tensor_kernel(rng, n, d);

                const ComplexMatrix lhs = moi_apply({tp, spectra, ops});
                ComplexMatrix rhs = mat_func_chain(tp.factors[0], spectra[0]);
                for (int k = 0; k < n; ++k)
                    rhs = rhs * ops[std::size_t(k)] *
                          mat_func_chain(tp.factors[std::size_t(k) + 1],
                                         spectra[std::size_t(k) + 1]);
                const double rel =
                    (lhs - rhs).frobenius_norm() / (1.0 + rhs.frobenius_norm());
                worst = std::max(worst, rel);
                ++trial_count;
            }
        }
    }
    report(1, "elementary-tensor fidelity", worst <= tol,
           worst_str(worst) + ", " + std::to_string(trial_count) + " trials, tol 1e-10");
}

// ---- 2. contraction lemmas ------------------------------------------------
void criterion_lemmas() {
    const double tol = 1e-10;
    const double brute_tol = 1e-12;
    const std::size_t d = 4;
    const int n = 3;
    double worst = 0.0, worst_brute = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        CounterRng rng(20000u + std::uint64_t(trial));
        std::vector<EigenDecomposition> spectra;
        for (int k = 0; k <= n; ++k) spectra.push_back(eigh(random_hermitian(rng, d)));
        std::vector<ComplexMatrix> ops;
        double scale = 1.0;
        for (int k = 0; k < n; ++k) {
            ops.push_back(random_matrix(rng, d));
            scale = std::max(scale, ops.back().frobenius_norm());
        }

        const GridKernel phi1 =
            detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n) + 1, d));
        const GridKernel phi2 = detail::random_grid(rng, {d, d});
        for (int j = 1; j <= n; ++j)
            worst = std::max(worst, moi_compose_check(phi1, phi2, j, spectra, ops) / scale);
        for (int j = 2; j <= n; ++j) {
            const GridKernel head =
                detail::random_grid(rng, std::vector<std::size_t>(std::size_t(j), d));
            const GridKernel tail =
                detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n + 2 - j), d));
            worst = std::max(worst, moi_split_check(head, tail, j, spectra, ops) / scale);
        }
        for (int j = 1; j <= n + 1; ++j) {
            const GridKernel skip =
                detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n), d));
            worst = std::max(worst, moi_insert_check(skip, j, spectra, ops) / scale);
        }

        // independent index-summation oracle at d = 2
        std::vector<EigenDecomposition> s2;
        for (int k = 0; k <= n; ++k) s2.push_back(eigh(random_hermitian(rng, 2)));
        std::vector<ComplexMatrix> o2;
        for (int k = 0; k < n; ++k) o2.push_back(random_matrix(rng, 2));
        const GridKernel g2 =
            detail::random_grid(rng, std::vector<std::size_t>(std::size_t(n) + 1, 2));
        worst_brute = std::max(
            worst_brute, (moi_apply({g2, s2, o2}) - detail::moi_brute_force(g2, s2, o2))
                             .frobenius_norm());
    }
    report(2, "contraction lemmas + summation oracle",
           worst <= tol && worst_brute <= brute_tol,
           worst_str(worst) + ", brute " + worst_str(worst_brute).substr(6) +
               ", tol 1e-10 / 1e-12");
}

// ---- 3. commuting reduction -----------------------------------------------
void criterion_commuting() {
    const double tol = 1e-9;
    double worst = 0.0;
    const std::vector<FunctionModel> models = {FunctionModel::exp(1.0),
                                               FunctionModel::inv_quad()};
    for (std::size_t fi = 0; fi < models.size(); ++fi) {
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 100; ++trial) {
                CounterRng rng(30000u + 1000u * fi + 100u * std::uint64_t(n) +
                               std::uint64_t(trial));
                const HermitianMatrix a = random_hermitian(rng, 5);
                std::vector<ComplexMatrix> zs;
                double zscale = 1.0;
                for (int k = 0; k < n; ++k) {
                    zs.push_back(detail::random_polynomial_in(rng, a));
                    zscale = std::max(zscale, zs.back().frobenius_norm());
                }
                const double res = moi_commuting_check(models[fi], n, a, zs);
                worst = std::max(worst, res / std::pow(zscale, n));
            }
        }
    }
    report(3, "commuting reduction", worst <= tol, worst_str(worst) + ", tol 1e-9");
}

// ---- 4. divided differences -----------------------------------------------
void criterion_ddiff() {
    const std::vector<FunctionModel> models = {
        FunctionModel::exp(1.0), FunctionModel::sin(1.0), FunctionModel::inv_quad(),
        FunctionModel::sqrt_eps(0.5)};
    double worst_perm = 0.0, worst_collapse = 0.0, worst_oracle = 0.0;
    double worst_rec = 0.0, worst_prod = 0.0;
    for (std::size_t fi = 0; fi < models.size(); ++fi) {
        const FunctionModel& f = models[fi];
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 50; ++trial) {
                CounterRng rng(40000u + 1000u * fi + 100u * std::uint64_t(n) +
                               std::uint64_t(trial));
                const NodeList xs = detail::random_nodes(rng, n + 1, -2.0, 2.0, 1e-3);

                const double ref = divided_difference(f, xs);
                NodeList perm = xs;
                for (int s = 0; s < 10; ++s) {
                    for (std::size_t i = perm.size(); i > 1; --i)
                        std::swap(perm[i - 1], perm[rng.next_u64() % i]);
                    worst_perm = std::max(worst_perm,
                                          std::abs(divided_difference(f, perm) - ref) /
                                              (1.0 + std::abs(ref)));
                }

                const double x = -2.0 + 4.0 * rng.uniform();
                double factorial = 1.0;
                for (int k = 2; k <= n; ++k) factorial *= double(k);
                const double coll =
                    std::abs(divided_difference(f, NodeList(std::size_t(n) + 1, x)) -
                             f.eval_deriv(n, x) / factorial);
                worst_collapse = std::max(
                    worst_collapse, coll / (1.0 + std::abs(f.eval_deriv(n, x)) / factorial));

                worst_oracle =
                    std::max(worst_oracle, std::abs(ref - dd_simplex_oracle(f, xs)));

                for (int j = 1; j <= n; ++j)
                    worst_rec = std::max(worst_rec, dd_recursion_residual(f, xs, j));

                worst_prod = std::max(
                    worst_prod, dd_product_residual(f, FunctionModel::inv_quad(), xs) /
                                    (1.0 + std::abs(ref)));
            }
        }
    }
    const bool pass = worst_perm <= 1e-9 && worst_collapse <= 1e-10 &&
                      worst_oracle <= 1e-6 && worst_rec <= 1e-10 && worst_prod <= 1e-8;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "perm %.1e coll %.1e oracle %.1e rec %.1e prod %.1e", worst_perm,
                  worst_collapse, worst_oracle, worst_rec, worst_prod);
    report(4, "divided-difference identities", pass, detail);
}

// ---- 5. derivative formula vs finite differences --------------------------
void criterion_derivative() {
    const FunctionModel poly5 =
        FunctionModel::polynomial({0.0, 1.0, 0.5, -0.25, 0.125, 0.0625});
    const std::vector<std::pair<FunctionModel, bool>> models = {
        {FunctionModel::exp(1.0), false},
        {FunctionModel::sin(1.0), false},
        {poly5, true},
        {FunctionModel::sqrt_eps(1.0), false},
    };
    double worst = 0.0, worst_poly = 0.0;
    for (std::size_t fi = 0; fi < models.size(); ++fi) {
        CounterRng rng(50000u + std::uint64_t(fi));
        const PerturbationPath path(random_hermitian(rng, 6), random_hermitian(rng, 6, 0.5),
                                    models[fi].first);
        for (int k = 1; k <= 3; ++k) {
            for (double t : {0.0, 0.2}) {
                // The degree-5 polynomial is a stencil-exactness case: the
                // extrapolated stencil has zero truncation for k >= 2, and
                // O(h^4) truncation ~1e-12 for k = 1 at h = 5e-3. A larger
                // step for k >= 2 keeps the rounding floor eps/h^k below
                // 1e-11; the smooth families use the default steps.
                const double h = models[fi].second ? (k == 1 ? 5e-3 : 0.5) : 0.0;
                const DerivativeReport rep =
                    compare_derivatives(path, k, t, {1.5, 2.0, 4.0}, h);
                for (const auto& [p, rel] : rep.schatten_rel_errors) {
                    worst = std::max(worst, rel);
                    if (models[fi].second) worst_poly = std::max(worst_poly, rel);
                }
            }
        }
    }
    report(5, "derivative formula vs finite differences",
           worst <= 1e-5 && worst_poly <= 1e-11,
           worst_str(worst) + ", poly " + worst_str(worst_poly).substr(6) +
               ", tol 1e-5 / 1e-11");
}

// ---- 6. perturbation formula ----------------------------------------------
void criterion_perturb() {
    const double tol = 1e-9;
    const FunctionModel f = FunctionModel::exp(1.0);
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            CounterRng rng(60000u + 1000u * std::uint64_t(n) + std::uint64_t(trial));
            std::vector<HermitianMatrix> as;
            for (int k = 0; k < n - 1; ++k) as.push_back(random_hermitian(rng, 5));
            const HermitianMatrix a = random_hermitian(rng, 5);
            const HermitianMatrix b = random_hermitian(rng, 5);
            std::vector<ComplexMatrix> ks;
            double scale = 1.0 + (b.matrix() - a.matrix()).frobenius_norm();
            for (int k = 0; k < n - 1; ++k) {
                ks.push_back(random_matrix(rng, 5));
                scale = std::max(scale, 1.0 + ks.back().frobenius_norm());
            }
            for (int j = 1; j <= n; ++j)
                worst = std::max(
                    worst, perturbation_formula_residual(as, a, b, f, n, j, ks, 2.0) / scale);
        }
    }
    report(6, "perturbation formula", worst <= tol, worst_str(worst) + ", tol 1e-9");
}

// ---- 7. Taylor remainder --------------------------------------------------
void criterion_taylor() {
    double worst_id = 0.0, worst_poly = 0.0;
    bool ratios_ok = true;
    for (int n = 2; n <= 3; ++n) {
        std::vector<double> ratios;
        for (int trial = 0; trial < 100; ++trial) {
            CounterRng rng(70000u + 1000u * std::uint64_t(n) + std::uint64_t(trial));
            const PerturbationPath path(random_hermitian(rng, 4),
                                        random_hermitian(rng, 4, 0.5),
                                        FunctionModel::exp(1.0));
            const TaylorRemainder rem = taylor_remainder(path, n, 2.0);
            const double scale = 1.0 + std::max(schatten_norm(rem.direct, 2.0),
                                                schatten_norm(rem.moi, 2.0));
            worst_id = std::max(worst_id,
                                schatten_norm(rem.direct - rem.moi, 2.0) / scale);
            if (!std::isfinite(rem.ratio)) ratios_ok = false;
            ratios.push_back(rem.ratio);

            // degree-(n-1) polynomial: the remainder must vanish relative to
            // the size of the expanded difference
            std::vector<double> coeffs(std::size_t(n), 0.5);
            const PerturbationPath ppoly(path.a, path.k, FunctionModel::polynomial(coeffs));
            const TaylorRemainder prem = taylor_remainder(ppoly, n, 2.0);
            const double pscale = 1.0 + schatten_norm(phi(ppoly, 1.0), 2.0);
            worst_poly = std::max(worst_poly, schatten_norm(prem.direct, 2.0) / pscale);
            worst_poly = std::max(worst_poly, schatten_norm(prem.moi, 2.0) / pscale);
        }
        std::sort(ratios.begin(), ratios.end());
        const double median = ratios[ratios.size() / 2];
        if (median <= 0.0 || ratios.back() > 10.0 * median) ratios_ok = false;
    }
    report(7, "Taylor remainder identity and estimate",
           worst_id <= 1e-9 && worst_poly <= 1e-12 && ratios_ok,
           worst_str(worst_id) + ", poly " + worst_str(worst_poly).substr(6) +
               (ratios_ok ? ", ratios stable" : ", ratios unstable"));
}

// ---- 8. continuity --------------------------------------------------------
void criterion_continuity() {
    CounterRng rng(80000u);
    const PerturbationPath path(random_hermitian(rng, 6), random_hermitian(rng, 6, 0.5),
                                FunctionModel::exp(1.0));
    const auto grid = [](double step) {
        std::vector<double> ts;
        for (double t = -1.0; t <= 1.0 + 1e-12; t += step) ts.push_back(t);
        return ts;
    };
    const ContinuityReport coarse = continuity_sweep(path, 2, grid(1e-2), 2.0);
    const ContinuityReport fine = continuity_sweep(path, 2, grid(5e-3), 2.0);
    const double ratio =
        coarse.max_increment > 0.0 ? fine.max_increment / coarse.max_increment : 1.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "halving ratio %.3f, tol 0.75", ratio);
    report(8, "modulus of continuity", ratio <= 0.75, detail);
}

// ---- 9. infrastructure ----------------------------------------------------
int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_infra(const char* cli_path) {
    double worst_recon = 0.0, worst_unit = 0.0;
    for (std::size_t d : {8u, 16u, 32u}) {
        for (int trial = 0; trial < 5; ++trial) {
            CounterRng rng(90000u + 100u * d + std::uint64_t(trial));
            const HermitianMatrix h = random_hermitian(rng, d);
            const EigenDecomposition e = eigh(h);
            ComplexMatrix lam(d, d);
            for (std::size_t i = 0; i < d; ++i) lam(i, i) = e.eigenvalues[i];
            worst_recon = std::max(
                worst_recon, (e.unitary * lam * e.unitary.adjoint() - h.matrix())
                                     .frobenius_norm() /
                                 (1.0 + h.matrix().frobenius_norm()));
            worst_unit = std::max(
                worst_unit, (e.unitary.adjoint() * e.unitary - ComplexMatrix::identity(d))
                                    .frobenius_norm() /
                                double(d));
        }
    }
    bool pass = worst_recon <= 1e-11 && worst_unit <= 1e-12;
    std::string detail = worst_str(worst_recon) + ", unitarity " +
                         worst_str(worst_unit).substr(6);

    // in-process determinism of the full suite
    {
        ExperimentConfig cfg;  // seed 42, dim 6, order 3 defaults
        cfg.trials = 5;
        const std::string a = to_csv(run_suite(cfg));
        const std::string b = to_csv(run_suite(cfg));
        if (a != b) {
            pass = false;
            detail += ", suite nondeterministic";
        }
        if (a.find("false") != std::string::npos) {
            pass = false;
            detail += ", suite rows failed";
        }
    }

    if (cli_path != nullptr) {
        const std::string base = std::string(cli_path) + " suite --seed 42 --dim 6 --order 3";
        if (run_command(base + " --trials 3 --out acc_run1.csv") != 0 ||
            run_command(base + " --trials 3 --out acc_run2.csv") != 0) {
            pass = false;
            detail += ", cli suite exit != 0";
        } else if (slurp("acc_run1.csv") != slurp("acc_run2.csv") ||
                   slurp("acc_run1.csv").empty()) {
            pass = false;
            detail += ", cli output differs";
        }
        // exit-code contract: forced failure via a vanishing tolerance, and a
        // malformed config
        {
            std::ofstream cfgfile("acc_force.json");
            cfgfile << "{\"trials\": 1, \"tolerances\": {\"oracle\": 1e-300}}";
        }
        if (run_command(std::string(cli_path) +
                        " ddiff --config acc_force.json --out acc_force.csv") != 1) {
            pass = false;
            detail += ", forced failure exit != 1";
        }
        if (run_command(std::string(cli_path) +
                        " suite --function nosuch:1 --out acc_bad.csv") != 2) {
            pass = false;
            detail += ", bad config exit != 2";
        }
    } else {
        detail += ", cli path not given (subprocess checks skipped)";
    }
    report(9, "infrastructure, determinism, exit codes", pass, detail);
}

} // namespace

int main(int argc, char** argv) {
    criterion_tensor();
    criterion_lemmas();
    criterion_commuting();
    criterion_ddiff();
    criterion_derivative();
    criterion_perturb();
    criterion_taylor();
    criterion_continuity();
    criterion_infra(argc > 1 ? argv[1] : nullptr);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

#ifndef OPINT_MOI_HPP
#define OPINT_MOI_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <variant>
#include <vector>

#include "ddiff.hpp"
#include "errors.hpp"
#include "funcmodel.hpp"
#include "linalg.hpp"

namespace opint {

/// f(H) through a function model and precomputed spectral data.
inline ComplexMatrix mat_func(const FunctionModel& f, const EigenDecomposition& e) {
    return mat_func_apply([&f](double x) { return f.eval_deriv(0, x); }, e);
}

/// Kernel phi evaluated on eigenvalue tuples. Order n means n+1 slots.
struct DividedDifferenceKernel {
    FunctionModel f;
    int order;
};

/// Dense value tensor indexed by eigen-indices, row-major over
/// (i_0, ..., i_n) with dims (d_1, ..., d_{n+1}).
struct GridKernel {
    std::vector<std::size_t> dims;
    std::vector<cplx> values;

    cplx at(const std::vector<std::size_t>& idx) const {
        std::size_t flat = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
        return values[flat];
    }
};

/// phi(x_1,...,x_{n+1}) = prod_k g_k(x_k); factor k holds the values of g_k
/// at the k-th spectrum's eigenvalues.
struct TensorProductKernel {
    std::vector<std::vector<cplx>> factors;
};

using MOIKernel = std::variant<DividedDifferenceKernel, GridKernel, TensorProductKernel>;

inline int kernel_order(const MOIKernel& k) {
    if (const auto* dd = std::get_if<DividedDifferenceKernel>(&k)) return dd->order;
    if (const auto* g = std::get_if<GridKernel>(&k)) return static_cast<int>(g->dims.size()) - 1;
    return static_cast<int>(std::get<TensorProductKernel>(k).factors.size()) - 1;
}

struct MOIRequest {
    MOIKernel kernel;
    std::vector<EigenDecomposition> spectra;  // n+1 decompositions
    std::vector<ComplexMatrix> operands;      // n operands
};

namespace detail {

// Kernel evaluation with memoization for divided-difference kernels: f^[n]
// is symmetric, so the cache key is the sorted eigenvalue tuple.
class KernelEvaluator {
public:
    KernelEvaluator(const MOIKernel& kernel, const std::vector<EigenDecomposition>& spectra)
        : kernel_(kernel), spectra_(spectra) {}

    cplx operator()(const std::vector<std::size_t>& idx) {
        if (const auto* dd = std::get_if<DividedDifferenceKernel>(&kernel_)) {
            NodeList key(idx.size());
            for (std::size_t k = 0; k < idx.size(); ++k)
                key[k] = spectra_[k].eigenvalues[idx[k]];
            std::sort(key.begin(), key.end());
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
            const double v = divided_difference(dd->f, key);
            cache_.emplace(std::move(key), v);
            return v;
        }
        if (const auto* g = std::get_if<GridKernel>(&kernel_)) return g->at(idx);
        const auto& tp = std::get<TensorProductKernel>(kernel_);
        cplx v = 1.0;
        for (std::size_t k = 0; k < idx.size(); ++k) v *= tp.factors[k][idx[k]];
        return v;
    }

private:
    const MOIKernel& kernel_;
    const std::vector<EigenDecomposition>& spectra_;
    std::map<NodeList, double> cache_;
};

} // namespace detail

/// Eigenbasis contraction of phi against the operands:
///   result = U_1 Y U_{n+1}*,   Yt_k = U_k* X_k U_{k+1},
///   Y[i_0, i_n] = sum over inner indices of
///                 phi(lambda^(1)_{i_0}, ..., lambda^(n+1)_{i_n})
///                 * Yt_1[i_0,i_1] ... Yt_n[i_{n-1},i_n].
/// On elementary tensors this reproduces f_1(A_1) X_1 f_2(A_2) ... f_{n+1}(A_{n+1}).
/// Per-entry summation runs in ascending multi-index order, so results are
/// bit-reproducible. Order 0 (one spectrum, no operand) yields the matrix
/// function of the one-variable kernel.
inline ComplexMatrix moi_apply(const MOIRequest& req) {
    const int n = kernel_order(req.kernel);
    if (n < 0) throw Error("kernel order must be >= 0");
    if (req.spectra.size() != static_cast<std::size_t>(n) + 1)
        throw DimMismatch("expected n+1 spectra for an order-n kernel");
    if (req.operands.size() != static_cast<std::size_t>(n))
        throw DimMismatch("expected n operands for an order-n kernel");
    const std::size_t d = req.spectra.front().dim();
    for (const auto& e : req.spectra)
        if (e.dim() != d) throw DimMismatch("spectra dimensions differ");
    for (const auto& x : req.operands)
        if (x.rows() != d || x.cols() != d) throw DimMismatch("operand dimension mismatch");
    if (const auto* g = std::get_if<GridKernel>(&req.kernel))
        for (std::size_t dim : g->dims)
            if (dim != d) throw DimMismatch("grid kernel dims must match spectra");
    if (const auto* tp = std::get_if<TensorProductKernel>(&req.kernel))
        for (const auto& fac : tp->factors)
            if (fac.size() != d) throw DimMismatch("tensor factor length must match dim");

    detail::KernelEvaluator phi(req.kernel, req.spectra);

    if (n == 0) {
        ComplexMatrix diag(d, d);
        std::vector<std::size_t> idx(1);
        for (std::size_t i = 0; i < d; ++i) {
            idx[0] = i;
            diag(i, i) = phi(idx);
        }
        const ComplexMatrix& u = req.spectra[0].unitary;
        return u * diag * u.adjoint();
    }

    // rotate operands into the adjacent eigenbases once
    std::vector<ComplexMatrix> yt;
    yt.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        yt.push_back(req.spectra[k].unitary.adjoint() * req.operands[k] *
                     req.spectra[k + 1].unitary);

    ComplexMatrix y(d, d);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n) + 1);
    for (std::size_t i0 = 0; i0 < d; ++i0) {
        idx.front() = i0;
        for (std::size_t in = 0; in < d; ++in) {
            idx.back() = in;
            cplx sum = 0.0;
            if (n == 1) {
                sum = phi(idx) * yt[0](i0, in);
            } else {
                // odometer over the n-1 inner indices, ascending
                std::vector<std::size_t> inner(static_cast<std::size_t>(n) - 1, 0);
                while (true) {
                    for (std::size_t k = 0; k < inner.size(); ++k) idx[k + 1] = inner[k];
                    cplx chain = yt[0](i0, idx[1]);
                    for (int k = 1; k < n - 1; ++k) chain *= yt[k](idx[k], idx[k + 1]);
                    chain *= yt[n - 1](idx[n - 1], in);
                    sum += phi(idx) * chain;
                    std::size_t pos = inner.size();
                    while (pos > 0) {
                        if (++inner[pos - 1] < d) break;
                        inner[pos - 1] = 0;
                        --pos;
                    }
                    if (pos == 0) break;
                }
            }
            y(i0, in) = sum;
        }
    }
    return req.spectra.front().unitary * y * req.spectra.back().unitary.adjoint();
}

/// Commuting reduction: when every Z_i commutes with A,
///   Gamma^{A,...,A}(f^[n])(Z_1,...,Z_n) = f^(n)(A) Z_1...Z_n / n!.
/// Returns the Frobenius residual between the two sides.
inline double moi_commuting_check(const FunctionModel& f, int n, const HermitianMatrix& a,
                                  const std::vector<ComplexMatrix>& zs) {
    if (zs.size() != static_cast<std::size_t>(n)) throw DimMismatch("expected n operands");
    const EigenDecomposition e = eigh(a);
    double scale = 1.0 + a.matrix().frobenius_norm();
    for (const auto& z : zs) {
        scale = std::max(scale, 1.0 + z.frobenius_norm());
        if (commutator(a.matrix(), z).frobenius_norm() > 1e-10 * scale)
            throw NotCommuting("operand does not commute with A");
    }

    MOIRequest req{DividedDifferenceKernel{f, n},
                   std::vector<EigenDecomposition>(static_cast<std::size_t>(n) + 1, e), zs};
    const ComplexMatrix lhs = moi_apply(req);

    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= double(k);
    ComplexMatrix rhs = mat_func_apply([&](double x) { return f.eval_deriv(n, x); }, e);
    for (const auto& z : zs) rhs = rhs * z;
    rhs = cplx(1.0 / factorial) * rhs;

    return (lhs - rhs).frobenius_norm();
}

namespace detail {

inline GridKernel materialize_product(const GridKernel& a, const GridKernel& b) {
    if (a.dims != b.dims) throw DimMismatch("grid kernel dims differ");
    GridKernel out{a.dims, a.values};
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= b.values[k];
    return out;
}

// Lift a kernel over a subset of slots to the full slot list:
// out(idx) = base(idx restricted to `slots`).
inline GridKernel lift_grid(const GridKernel& base, const std::vector<std::size_t>& slots,
                            const std::vector<std::size_t>& full_dims) {
    GridKernel out;
    out.dims = full_dims;
    std::size_t total = 1;
    for (std::size_t dim : full_dims) total *= dim;
    out.values.resize(total);
    std::vector<std::size_t> idx(full_dims.size(), 0);
    std::vector<std::size_t> sub(slots.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (std::size_t k = 0; k < slots.size(); ++k) sub[k] = idx[slots[k]];
        out.values[flat] = base.at(sub);
        for (std::size_t pos = full_dims.size(); pos-- > 0;) {
            if (++idx[pos] < full_dims[pos]) break;
            idx[pos] = 0;
        }
    }
    return out;
}

} // namespace detail

/// Two-kernel composition: contracting against phi1 * lift(phi2), where phi2
/// sees slots (j, j+1), equals contracting phi1 with the order-1 integral of
/// phi2 applied to the j-th operand. Slots are 1-based over n+1 spectra
/// (phi1 order n, phi2 order 1, 1 <= j <= n). Returns the Frobenius residual.
inline double moi_compose_check(const GridKernel& phi1, const GridKernel& phi2, int j,
                                const std::vector<EigenDecomposition>& spectra,
                                const std::vector<ComplexMatrix>& operands) {
    const int order = static_cast<int>(spectra.size()) - 1;
    if (j < 1 || j > order) throw Error("slot out of range");
    const std::size_t d = spectra.front().dim();
    const std::vector<std::size_t> full_dims(spectra.size(), d);

    const GridKernel lifted = detail::lift_grid(
        phi2, {static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)}, full_dims);
    const ComplexMatrix lhs =
        moi_apply({detail::materialize_product(phi1, lifted), spectra, operands});

    const ComplexMatrix inner = moi_apply(
        {phi2, {spectra[j - 1], spectra[j]}, {operands[static_cast<std::size_t>(j - 1)]}});
    std::vector<ComplexMatrix> replaced = operands;
    replaced[static_cast<std::size_t>(j - 1)] = inner;
    const ComplexMatrix rhs = moi_apply({phi1, spectra, replaced});

    return (lhs - rhs).frobenius_norm();
}

/// Shared-variable product split: phi(x_1..x_{n+1}) =
/// phi1(x_1..x_j) phi2(x_j..x_{n+1}) contracts into the product of the two
/// partial contractions. j is 1-based, 2 <= j <= n. Returns the residual.
inline double moi_split_check(const GridKernel& phi1, const GridKernel& phi2, int j,
                              const std::vector<EigenDecomposition>& spectra,
                              const std::vector<ComplexMatrix>& operands) {
    const int nslots = static_cast<int>(spectra.size());
    if (j < 2 || j > nslots - 1) throw Error("slot out of range");
    const std::size_t d = spectra.front().dim();
    const std::vector<std::size_t> full_dims(spectra.size(), d);

    std::vector<std::size_t> head_slots, tail_slots;
    for (int k = 0; k < j; ++k) head_slots.push_back(static_cast<std::size_t>(k));
    for (int k = j - 1; k < nslots; ++k) tail_slots.push_back(static_cast<std::size_t>(k));

    const GridKernel shared = detail::materialize_product(
        detail::lift_grid(phi1, head_slots, full_dims),
        detail::lift_grid(phi2, tail_slots, full_dims));
    const ComplexMatrix lhs = moi_apply({shared, spectra, operands});

    const std::vector<EigenDecomposition> head_spec(spectra.begin(), spectra.begin() + j);
    const std::vector<ComplexMatrix> head_ops(operands.begin(), operands.begin() + (j - 1));
    const std::vector<EigenDecomposition> tail_spec(spectra.begin() + (j - 1), spectra.end());
    const std::vector<ComplexMatrix> tail_ops(operands.begin() + (j - 1), operands.end());

    const ComplexMatrix rhs =
        moi_apply({phi1, head_spec, head_ops}) * moi_apply({phi2, tail_spec, tail_ops});
    return (lhs - rhs).frobenius_norm();
}

/// Slot insertion: a kernel independent of slot j contracts by merging the
/// adjacent operands (interior j), or by plain left/right multiplication at
/// the ends. phi has one slot fewer than `spectra`; j is 1-based.
inline double moi_insert_check(const GridKernel& phi, int j,
                               const std::vector<EigenDecomposition>& spectra,
                               const std::vector<ComplexMatrix>& operands) {
    const int nslots = static_cast<int>(spectra.size());
    if (j < 1 || j > nslots) throw Error("slot out of range");
    if (static_cast<int>(phi.dims.size()) != nslots - 1)
        throw DimMismatch("kernel must skip exactly one slot");
    const std::size_t d = spectra.front().dim();
    const std::vector<std::size_t> full_dims(spectra.size(), d);

    std::vector<std::size_t> kept;
    for (int k = 0; k < nslots; ++k)
        if (k != j - 1) kept.push_back(static_cast<std::size_t>(k));
    const GridKernel lifted = detail::lift_grid(phi, kept, full_dims);
    const ComplexMatrix lhs = moi_apply({lifted, spectra, operands});

    std::vector<EigenDecomposition> sub_spec;
    for (std::size_t k : kept) sub_spec.push_back(spectra[k]);

    ComplexMatrix rhs;
    if (j == 1) {
        const std::vector<ComplexMatrix> rest(operands.begin() + 1, operands.end());
        rhs = operands.front() * moi_apply({phi, sub_spec, rest});
    } else if (j == nslots) {
        const std::vector<ComplexMatrix> rest(operands.begin(), operands.end() - 1);
        rhs = moi_apply({phi, sub_spec, rest}) * operands.back();
    } else {
        std::vector<ComplexMatrix> merged;
        for (int k = 0; k < static_cast<int>(operands.size()); ++k) {
            if (k == j - 1) {
                merged.back() = merged.back() * operands[static_cast<std::size_t>(k)];
            } else {
                merged.push_back(operands[static_cast<std::size_t>(k)]);
            }
        }
        rhs = moi_apply({phi, sub_spec, merged});
    }
    return (lhs - rhs).frobenius_norm();
}

/// Materialize a tensor-product kernel as a dense grid; contraction results
/// must match bitwise.
inline GridKernel materialize(const TensorProductKernel& tp) {
    GridKernel g;
    for (const auto& fac : tp.factors) g.dims.push_back(fac.size());
    std::size_t total = 1;
    for (std::size_t dim : g.dims) total *= dim;
    g.values.resize(total);
    std::vector<std::size_t> idx(g.dims.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        cplx v = 1.0;
        for (std::size_t k = 0; k < idx.size(); ++k) v *= tp.factors[k][idx[k]];
        g.values[flat] = v;
        for (std::size_t pos = g.dims.size(); pos-- > 0;) {
            if (++idx[pos] < g.dims[pos]) break;
            idx[pos] = 0;
        }
    }
    return g;
}

} // namespace opint

#endif

#ifndef OPINT_LINALG_HPP
#define OPINT_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace opint {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw DimMismatch("entry count does not match rows*cols");
        for (const cplx& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error("non-finite matrix entry");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix a(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                a(j, i) = std::conj((*this)(i, j));
        return a;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
        x.require_same_shape(y);
        ComplexMatrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.entries_.size(); ++k)
            r.entries_[k] = x.entries_[k] + y.entries_[k];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
        x.require_same_shape(y);
        ComplexMatrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.entries_.size(); ++k)
            r.entries_[k] = x.entries_[k] - y.entries_[k];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
        if (x.cols_ != y.rows_) throw DimMismatch("matrix product shape mismatch");
        ComplexMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const cplx xik = x(i, k);
                if (xik == cplx(0.0)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend ComplexMatrix operator*(cplx a, const ComplexMatrix& x) {
        ComplexMatrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.entries_.size(); ++k) r.entries_[k] = a * x.entries_[k];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, cplx a) { return a * x; }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimMismatch("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<cplx> entries_;
};

/// Selfadjoint matrix. The constructor symmetrizes H <- (H + H*)/2 and
/// zeroes the imaginary parts of the diagonal.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(const ComplexMatrix& m) {
        if (m.rows() != m.cols()) throw DimMismatch("Hermitian matrix must be square");
        const std::size_t d = m.rows();
        ComplexMatrix h(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j)
                h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(i, i) = cplx(h(i, i).real(), 0.0);
        }
        mat_ = std::move(h);
    }

    static HermitianMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return HermitianMatrix(m);
    }

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    friend HermitianMatrix operator+(const HermitianMatrix& x, const HermitianMatrix& y) {
        return HermitianMatrix(x.mat_ + y.mat_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& x, const HermitianMatrix& y) {
        return HermitianMatrix(x.mat_ - y.mat_);
    }
    friend HermitianMatrix operator*(double a, const HermitianMatrix& x) {
        return HermitianMatrix(cplx(a) * x.mat_);
    }

private:
    ComplexMatrix mat_;
};

/// Spectral data of a Hermitian matrix: eigenvalues ascending, columns of
/// `unitary` are the matching eigenvectors.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix unitary;

    std::size_t dim() const { return eigenvalues.size(); }
};

/// Schatten exponent p in [1, inf]. The differentiability results hold on
/// the open interval (1, inf); `in_open_range` records whether p does.
struct SchattenIndex {
    double p;

    explicit SchattenIndex(double p_) : p(p_) {
        if (!(p >= 1.0)) throw InvalidP("Schatten index must satisfy p >= 1");
    }

    static SchattenIndex infinity() { return SchattenIndex(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const { return std::isinf(p); }
    bool in_open_range() const { return p > 1.0 && !is_infinite(); }
};

namespace detail {

// One complex Jacobi rotation on the (p,q) plane: A <- W* A W with
// W = [[c, s],[-s*conj(e), c*conj(e)]] in the (p,q) block, e the phase of A(p,q).
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& u, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double beta = std::abs(apq);
    if (beta == 0.0) return;
    const cplx e = apq / beta;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * beta);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const cplx wpp = c;            // W(p,p)
    const cplx wpq = s;            // W(p,q)
    const cplx wqp = -s * std::conj(e);  // W(q,p)
    const cplx wqq = c * std::conj(e);   // W(q,q)

    const std::size_t n = a.rows();
    // columns: A <- A W
    for (std::size_t r = 0; r < n; ++r) {
        const cplx arp = a(r, p), arq = a(r, q);
        a(r, p) = arp * wpp + arq * wqp;
        a(r, q) = arp * wpq + arq * wqq;
    }
    // rows: A <- W* A
    for (std::size_t cidx = 0; cidx < n; ++cidx) {
        const cplx apc = a(p, cidx), aqc = a(q, cidx);
        a(p, cidx) = std::conj(wpp) * apc + std::conj(wqp) * aqc;
        a(q, cidx) = std::conj(wpq) * apc + std::conj(wqq) * aqc;
    }
    // the rotation annihilates (p,q) analytically
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);

    // accumulate eigenvectors: U <- U W
    for (std::size_t r = 0; r < n; ++r) {
        const cplx urp = u(r, p), urq = u(r, q);
        u(r, p) = urp * wpp + urq * wqp;
        u(r, q) = urp * wpq + urq * wqq;
    }
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Eigenvalues
/// ascending; ties keep the sweep output order (stable sort).
inline EigenDecomposition eigh(const HermitianMatrix& h) {
    constexpr int kMaxSweeps = 60;
    const std::size_t n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix u = ComplexMatrix::identity(n);
    const double hnorm = a.frobenius_norm();
    const double tol = 1e-13 * hnorm;

    if (n > 1) {
        int sweep = 0;
        while (detail::off_diagonal_norm(a) > tol) {
            if (++sweep > kMaxSweeps)
                throw NonConvergence("Jacobi eigensolver exceeded sweep cap");
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    detail::jacobi_rotate(a, u, p, q);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition e;
    e.eigenvalues.resize(n);
    e.unitary = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        e.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) e.unitary(r, k) = u(r, order[k]);
    }
    return e;
}

/// f(H) = U diag(f(lambda_i)) U* through a scalar callable.
template <typename F>
ComplexMatrix mat_func_apply(F&& f, const EigenDecomposition& e) {
    const std::size_t n = e.dim();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = f(e.eigenvalues[i]);
        if (!std::isfinite(v)) throw EvalError("function undefined at an eigenvalue");
        d(i, i) = v;
    }
    return e.unitary * d * e.unitary.adjoint();
}

/// Singular values, nonnegative descending, via eigh(X*X).
inline std::vector<double> singular_values(const ComplexMatrix& x) {
    const ComplexMatrix gram = x.adjoint() * x;
    EigenDecomposition e = eigh(HermitianMatrix(gram));
    std::vector<double> s(e.eigenvalues.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        // clamp tiny negatives produced by rounding
        const double v = std::max(e.eigenvalues[s.size() - 1 - i], 0.0);
        s[i] = std::sqrt(v);
    }
    return s;
}

/// Schatten p-norm (sum sigma_i^p)^{1/p}; max sigma_i at p = inf.
inline double schatten_norm(const ComplexMatrix& x, const SchattenIndex& p) {
    const std::vector<double> s = singular_values(x);
    if (s.empty()) return 0.0;
    if (p.is_infinite()) return s.front();
    if (p.p == 2.0) return x.frobenius_norm();
    double acc = 0.0;
    for (double v : s) acc += std::pow(v, p.p);
    return std::pow(acc, 1.0 / p.p);
}

inline double schatten_norm(const ComplexMatrix& x, double p) {
    return schatten_norm(x, SchattenIndex(p));
}

inline double spectral_norm(const ComplexMatrix& x) {
    return schatten_norm(x, SchattenIndex::infinity());
}

/// Commutator AZ - ZA.
inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& z) {
    return a * z - z * a;
}

} // namespace opint

#endif

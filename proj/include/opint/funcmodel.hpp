#ifndef OPINT_FUNCMODEL_HPP
#define OPINT_FUNCMODEL_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace opint {

struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
            throw Error("invalid interval");
    }

    Interval hull(const Interval& o) const {
        return Interval(std::min(lo, o.lo), std::max(hi, o.hi));
    }
};

/// Scalar function with exact analytic derivatives up to `max_order`.
///
/// Built-in families carry closed-form or recurrence-based derivatives of
/// every order; Custom wraps a table of derivative closures.
class FunctionModel {
public:
    enum class Kind { Polynomial, Exp, Sin, Cos, InvQuad, SqrtEps, Custom };

    static constexpr int kUnboundedOrder = 1 << 20;

    static FunctionModel polynomial(std::vector<double> coeffs_ascending) {
        FunctionModel f(Kind::Polynomial);
        if (coeffs_ascending.empty()) coeffs_ascending.push_back(0.0);
        for (double c : coeffs_ascending)
            if (!std::isfinite(c)) throw Error("non-finite polynomial coefficient");
        f.params_ = std::move(coeffs_ascending);
        return f;
    }

    static FunctionModel exp(double scale = 1.0) {
        FunctionModel f(Kind::Exp);
        if (!std::isfinite(scale)) throw Error("non-finite scale");
        f.params_ = {scale};
        return f;
    }

    static FunctionModel sin(double freq = 1.0) {
        FunctionModel f(Kind::Sin);
        if (!std::isfinite(freq)) throw Error("non-finite frequency");
        f.params_ = {freq};
        return f;
    }

    static FunctionModel cos(double freq = 1.0) {
        FunctionModel f(Kind::Cos);
        if (!std::isfinite(freq)) throw Error("non-finite frequency");
        f.params_ = {freq};
        return f;
    }

    /// x -> 1/(1+x^2)
    static FunctionModel inv_quad() { return FunctionModel(Kind::InvQuad); }

    /// x -> sqrt(x^2 + eps), eps > 0. Smooth but with large higher
    /// derivatives near 0 for small eps; the stress family.
    static FunctionModel sqrt_eps(double eps) {
        if (!(eps > 0.0) || !std::isfinite(eps)) throw Error("sqrt_eps requires eps > 0");
        FunctionModel f(Kind::SqrtEps);
        f.params_ = {eps};
        return f;
    }

    /// derivs[k] evaluates f^(k); max_order = derivs.size() - 1.
    static FunctionModel custom(std::vector<std::function<double(double)>> derivs) {
        if (derivs.empty()) throw Error("custom model needs at least f itself");
        FunctionModel f(Kind::Custom);
        f.custom_ = std::make_shared<std::vector<std::function<double(double)>>>(std::move(derivs));
        return f;
    }

    Kind kind() const { return kind_; }

    /// Ascending coefficients; only meaningful for Kind::Polynomial.
    const std::vector<double>& polynomial_coefficients() const {
        if (kind_ != Kind::Polynomial) throw Error("not a polynomial model");
        return params_;
    }

    int max_order() const {
        if (kind_ == Kind::Custom) return static_cast<int>(custom_->size()) - 1;
        return kUnboundedOrder;
    }

    /// Exact value of f^(order)(x); order 0 is f(x).
    double eval_deriv(int order, double x) const {
        if (order < 0) throw Error("negative derivative order");
        if (order > max_order())
            throw OrderExceeded("derivative order " + std::to_string(order) +
                                " exceeds model max_order " + std::to_string(max_order()));
        switch (kind_) {
            case Kind::Polynomial: {
                double acc = 0.0;
                const auto& c = params_;
                for (std::size_t i = c.size(); i-- > 0;) {
                    const int deg = static_cast<int>(i);
                    if (deg < order) break;
                    double fall = 1.0;
                    for (int k = 0; k < order; ++k) fall *= double(deg - k);
                    acc = acc * x + c[i] * fall;
                }
                // Horner over the shifted coefficients; acc already holds the value
                return acc;
            }
            case Kind::Exp: {
                const double a = params_[0];
                return std::pow(a, order) * std::exp(a * x);
            }
            case Kind::Sin: {
                const double w = params_[0];
                return std::pow(w, order) * phase_shifted_sin(order, w * x);
            }
            case Kind::Cos: {
                const double w = params_[0];
                return std::pow(w, order) * phase_shifted_sin(order + 1, w * x);
            }
            case Kind::InvQuad:
                return inv_quad_deriv(order, x);
            case Kind::SqrtEps:
                return sqrt_eps_deriv(order, x, params_[0]);
            case Kind::Custom:
                return (*custom_)[static_cast<std::size_t>(order)](x);
        }
        throw Error("unreachable");
    }

    double operator()(double x) const { return eval_deriv(0, x); }

    /// Product model h = g*f with derivatives by the Leibniz rule; exact as
    /// long as both factors are.
    static FunctionModel product(const FunctionModel& f, const FunctionModel& g, int max_order) {
        if (max_order > f.max_order() || max_order > g.max_order())
            throw OrderExceeded("product order exceeds a factor's max_order");
        std::vector<std::function<double(double)>> derivs;
        derivs.reserve(static_cast<std::size_t>(max_order) + 1);
        for (int k = 0; k <= max_order; ++k) {
            derivs.push_back([f, g, k](double x) {
                double acc = 0.0;
                double binom = 1.0;
                for (int i = 0; i <= k; ++i) {
                    acc += binom * g.eval_deriv(i, x) * f.eval_deriv(k - i, x);
                    binom = binom * double(k - i) / double(i + 1);
                }
                return acc;
            });
        }
        return custom(std::move(derivs));
    }

    /// Model evaluating f^(shift + k) as its k-th derivative.
    static FunctionModel derivative_model(const FunctionModel& f, int shift, int max_order) {
        if (shift + max_order > f.max_order())
            throw OrderExceeded("derivative shift exceeds max_order");
        std::vector<std::function<double(double)>> derivs;
        for (int k = 0; k <= max_order; ++k)
            derivs.push_back([f, shift, k](double x) { return f.eval_deriv(shift + k, x); });
        return custom(std::move(derivs));
    }

private:
    explicit FunctionModel(Kind k) : kind_(k) {}

    // sin with derivative phase: d^k sin(y) = sin(y + k*pi/2), evaluated
    // through the mod-4 cycle to stay exact.
    static double phase_shifted_sin(int order, double y) {
        switch (order & 3) {
            case 0: return std::sin(y);
            case 1: return std::cos(y);
            case 2: return -std::sin(y);
            default: return -std::cos(y);
        }
    }

    // 1/(1+x^2) = (1/2i)(1/(x-i) - 1/(x+i)); the k-th derivative follows
    // from the partial fractions and is real.
    static double inv_quad_deriv(int order, double x) {
        const std::complex<double> i(0.0, 1.0);
        double factorial = 1.0;
        for (int k = 1; k <= order; ++k) factorial *= double(k);
        const double sign = (order % 2 == 0) ? 1.0 : -1.0;
        const std::complex<double> term =
            std::pow(x - i, -(order + 1)) - std::pow(x + i, -(order + 1));
        return (sign * factorial * term / (2.0 * i)).real();
    }

    // f = sqrt(x^2+eps) satisfies (x^2+eps) f' = x f. Differentiating k times:
    // u f^(k+1) = (1-2k) x f^(k) + k(2-k) f^(k-1), u = x^2+eps.
    static double sqrt_eps_deriv(int order, double x, double eps) {
        const double u = x * x + eps;
        double fk = std::sqrt(u);      // f^(0)
        if (order == 0) return fk;
        double fk1 = x / fk;           // f^(1)
        for (int k = 1; k < order; ++k) {
            const double next = ((1.0 - 2.0 * k) * x * fk1 + k * (2.0 - k) * fk) / u;
            fk = fk1;
            fk1 = next;
        }
        return fk1;
    }

    Kind kind_;
    std::vector<double> params_;
    std::shared_ptr<std::vector<std::function<double(double)>>> custom_;
};

/// Grid-scan estimate of max |f^(order)| over I: 4096 samples inflated by
/// 1%. A report-only quantity, not a certified bound.
inline double sup_norm_estimate(const FunctionModel& f, int order, const Interval& interval) {
    constexpr int kSamples = 4096;
    double best = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double x = interval.lo + (interval.hi - interval.lo) * double(i) / double(kSamples - 1);
        best = std::max(best, std::abs(f.eval_deriv(order, x)));
    }
    return best * 1.01;
}

} // namespace opint

#endif

#ifndef OPINT_RNG_HPP
#define OPINT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "linalg.hpp"

namespace opint {

/// Counter-based generator: output i is SplitMix64's finalizer applied to
/// seed + (i+1) * 0x9E3779B97F4A7C15. Fixed constants, no hidden state, so
/// any implementation of the same recipe reproduces identical streams.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1), 53 mantissa bits
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    cplx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cplx(re, im);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// GUE-style Hermitian sample, rescaled to the requested spectral norm.
inline HermitianMatrix random_hermitian(CounterRng& rng, std::size_t d,
                                        double target_spectral_norm = 2.0) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z = rng.complex_gaussian() / std::sqrt(2.0);
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    HermitianMatrix h(m);
    const double norm = spectral_norm(h.matrix());
    if (norm == 0.0) return h;
    return (target_spectral_norm / norm) * h;
}

/// Dense complex Gaussian matrix rescaled to unit spectral norm times `scale`.
inline ComplexMatrix random_matrix(CounterRng& rng, std::size_t d, double scale = 1.0) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.complex_gaussian();
    const double norm = spectral_norm(m);
    if (norm == 0.0) return m;
    return cplx(scale / norm) * m;
}

} // namespace opint

#endif

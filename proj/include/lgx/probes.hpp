#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "lgx/scalar.hpp"
#include "lgx/seminorm.hpp"
#include "lgx/vector.hpp"

namespace lgx {

/// Deterministic RNG wrapper; all probe sets in the library are seeded.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform(double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(eng);
    }
    long uniform_int(long a, long b) {
        std::uniform_int_distribution<long> d(a, b);
        return d(eng);
    }
};

inline double sample_coord(const RealField&, Rng& rng, double bound) {
    return rng.uniform(-bound, bound);
}

inline Padic sample_coord(const PadicField& f, Rng& rng, double bound) {
    if (bound <= 0.0) throw std::invalid_argument("sample_coord: nonpositive bound");
    // smallest m with p^{-m} < bound
    long m = 0;
    double v = 1.0;
    while (v >= bound) {
        v /= static_cast<double>(f.p);
        ++m;
        if (m > 200) break;
    }
    const long digits = rng.uniform_int(1, 1000000);
    cpp_int pw = boost::multiprecision::pow(cpp_int(f.p), static_cast<unsigned>(m));
    return Padic(cpp_rational(cpp_int(digits) * pw), f.p, f.prec);
}

/// Random point with ||x||_p < r against a weighted max/sum seminorm.
template <class F>
Vec<typename F::scalar> sample_ball(const F& field, Rng& rng, const Seminorm<F>& p,
                                    std::size_t dim, double r) {
    if (r <= 0.0) throw std::invalid_argument("sample_ball: nonpositive radius");
    const double shrink = (p.kind == Seminorm<F>::Kind::Sum) ? static_cast<double>(dim) : 1.0;
    Vec<typename F::scalar> x = zero_vec(field, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double bound = 0.999 * r / (p.scale * p.weight(i) * shrink);
        x[i] = sample_coord(field, rng, bound);
    }
    return x;
}

} // namespace lgx

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgx/scalar.hpp"
#include "lgx/seminorm.hpp"
#include "lgx/vector.hpp"

namespace lgx {

/// Certificate that a sequence is Mackey-Cauchy with gauge mu_{n,m} =
/// a^{min(n,m)+1}: per seminorm, the measured sup over the rescaled
/// difference set Omega = { mu_{n,m}^{-1} (v_n - v_m) }.
struct MackeyCauchyCertificate {
    double gauge_abs = 0.0;                   // |a|
    double cap = 1e6;                         // finiteness cap for the witness sup
    std::map<std::string, double> witness_sup; // per seminorm name
    std::size_t pairs = 0;
    bool pass = false;
};

/// Certify v as Mackey-Cauchy against the gauge a (|a| < 1) over a finite
/// seminorm family. Passes iff every witness sup stays below the cap.
template <class F>
MackeyCauchyCertificate mackey_cauchy_certify(const F& field,
                                              const std::vector<Vec<typename F::scalar>>& v,
                                              const typename F::scalar& a,
                                              const SeminormFamily<F>& family,
                                              double cap = 1e6) {
    if (v.size() < 3)
        throw std::invalid_argument("mackey_cauchy_certify: need at least 3 terms");
    if (family.empty())
        throw std::invalid_argument("mackey_cauchy_certify: empty seminorm family");
    const double aa = field.abs(a);
    if (aa >= 1.0 || aa == 0.0)
        throw std::invalid_argument("mackey_cauchy_certify: need 0 < |a| < 1");

    MackeyCauchyCertificate cert;
    cert.gauge_abs = aa;
    cert.cap = cap;
    for (const auto& [name, q] : family.items) cert.witness_sup[name] = 0.0;

    for (std::size_t n = 0; n < v.size(); ++n) {
        for (std::size_t m = n + 1; m < v.size(); ++m) {
            const auto diff = v[m] - v[n];
            const double mu = std::pow(aa, static_cast<double>(n) + 1.0);
            for (const auto& [name, q] : family.items) {
                const double w = q.eval(field, diff) / mu;
                if (w > cert.witness_sup[name]) cert.witness_sup[name] = w;
            }
            ++cert.pairs;
        }
    }
    cert.pass = true;
    for (const auto& [name, w] : cert.witness_sup)
        if (!(std::isfinite(w) && w <= cap)) cert.pass = false;
    return cert;
}

/// Gauge scalar r_{n,m} = p^{[theta (min{n,m}+1)]} for the p-adic branch;
/// [.] is the integer part, so |r_{n,m}|_p = p^{-[theta(min+1)]}.
inline Padic padic_gauge(double theta, long n, long m, long p, int prec = 24) {
    if (theta <= 0.0) throw std::invalid_argument("padic_gauge: theta must be positive");
    const long lvl = std::min(n, m) + 1;
    const long e = static_cast<long>(std::floor(theta * static_cast<double>(lvl)));
    cpp_int pw = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(e));
    return Padic(cpp_rational(pw), p, prec);
}

} // namespace lgx

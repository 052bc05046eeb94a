#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgx/local_group.hpp"
#include "lgx/matrix.hpp"
#include "lgx/probes.hpp"
#include "lgx/seminorm.hpp"
#include "lgx/vector.hpp"

namespace lgx {

/// Finite Taylor data of an evaluable map along a fixed direction:
/// f(x + ty) - f(x) = sum_j t^j a_j + t^k R_k(t). Coefficients are
/// extracted from sample scalars; the remainder is defined by subtraction.
template <class F>
struct TaylorExpansion {
    using S = typename F::scalar;
    using V = Vec<S>;

    V x, y;
    int order = 0;
    std::vector<V> coeffs; // a_1 .. a_k evaluated at (x, y)
    std::function<V(const V&)> f;
    F field;

    /// R_k(x, y, t); zero at t = 0 by construction.
    V remainder(const S& t) const {
        if (field.abs(t) == 0.0) return zero_vec(field, x.dim() ? f(x).dim() : 0);
        V acc = f(x + y.scaled(t)) - f(x);
        S tp = field.one();
        for (int j = 1; j <= order; ++j) {
            tp = tp * t;
            acc = acc - coeffs[static_cast<std::size_t>(j - 1)].scaled(tp);
        }
        S tk = field.one();
        for (int j = 0; j < order; ++j) tk = tk * t;
        return acc.scaled(field.one() / tk);
    }
};

/// Extract a_1..a_k from k distinct nonzero sample scalars by solving the
/// Vandermonde system sum_j t_i^j a_j = f(x + t_i y) - f(x).
template <class F>
TaylorExpansion<F> taylor_coefficients(const F& field,
                                       const std::function<Vec<typename F::scalar>(const Vec<typename F::scalar>&)>& f,
                                       const Vec<typename F::scalar>& x,
                                       const Vec<typename F::scalar>& y, int k,
                                       const std::vector<typename F::scalar>& t_samples) {
    using S = typename F::scalar;
    if (k < 1) throw std::invalid_argument("taylor_coefficients: order must be >= 1");
    if (static_cast<int>(t_samples.size()) < k)
        throw std::invalid_argument("taylor_coefficients: need >= k sample scalars");
    for (std::size_t i = 0; i < t_samples.size(); ++i) {
        if (field.abs(t_samples[i]) == 0.0)
            throw std::invalid_argument("taylor_coefficients: zero sample scalar");
        for (std::size_t j = i + 1; j < t_samples.size(); ++j)
            if (field.abs(t_samples[i] - t_samples[j]) == 0.0)
                throw std::invalid_argument("taylor_coefficients: repeated sample scalar");
    }

    const auto f0 = f(x);
    const std::size_t out_dim = f0.dim();
    const std::size_t n = static_cast<std::size_t>(k);

    Mat<S> V(n, field.zero());
    for (std::size_t i = 0; i < n; ++i) {
        S tp = field.one();
        for (std::size_t j = 0; j < n; ++j) {
            tp = tp * t_samples[i];
            V(i, j) = tp;
        }
    }
    std::vector<Vec<S>> rhs;
    rhs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rhs.push_back(f(x + y.scaled(t_samples[i])) - f0);

    TaylorExpansion<F> exp;
    exp.field = field;
    exp.x = x;
    exp.y = y;
    exp.order = k;
    exp.f = f;
    exp.coeffs.assign(n, zero_vec(field, out_dim));
    for (std::size_t coord = 0; coord < out_dim; ++coord) {
        std::vector<S> b(n, field.zero());
        for (std::size_t i = 0; i < n; ++i) b[i] = rhs[i][coord];
        const auto sol = solve_system(field, V, b);
        for (std::size_t j = 0; j < n; ++j) exp.coeffs[j][coord] = sol[j];
    }
    return exp;
}

/// R(x, y) = sigma(x, y) - (2x + y) in the real case, sigma(x, y) - (px + y)
/// in the p-adic case; computed by exact subtraction, no sampling.
template <class F>
Vec<typename F::scalar> defect_R(const LocalChartGroup<F>& g, const Vec<typename F::scalar>& x,
                                 const Vec<typename F::scalar>& y) {
    if constexpr (F::ultrametric) {
        const auto lin = x.scaled(g.field.from_int(g.field.p)) + y;
        return sigma_padic(g, x, y) - lin;
    } else {
        const auto lin = x.scaled(2.0) + y;
        return sigma_real(g, x, y) - lin;
    }
}

/// D(x, y, z) = tau(x, y, z) - (x + y + z), again by exact subtraction.
template <class F>
Vec<typename F::scalar> defect_D(const LocalChartGroup<F>& g, const Vec<typename F::scalar>& x,
                                 const Vec<typename F::scalar>& y,
                                 const Vec<typename F::scalar>& z) {
    return tau(g, x, y, z) - (x + y + z);
}

struct QuadraticBoundReport {
    bool pass = false;
    double scaling = 1.0;     // factor applied to the certifying seminorm
    std::string seminorm;     // family member that certifies
    double worst_ratio = 0.0; // max ||R_1||_q / ||y||_p^2 over probes at the final scaling
    std::size_t probes = 0;
};

/// Search the seminorm family (members scaled by powers of 2) for p with
/// ||f(x0+y) - f(x0) - df(x0,y)||_q <= C ||y||_p^2 on dyadic shrinkings
/// of a fixed direction set. Probing y at scales 2^{-j} down to j_max is
/// what detects sub-quadratic remainders; the scaling search is capped so
/// it cannot outpace the probed depth. Failure is reported, not thrown.
template <class F>
QuadraticBoundReport quadratic_bound_check(
    const F& field, const std::function<Vec<typename F::scalar>(const Vec<typename F::scalar>&)>& f,
    const std::function<Vec<typename F::scalar>(const Vec<typename F::scalar>&, const Vec<typename F::scalar>&)>& df,
    const Vec<typename F::scalar>& x0, const Seminorm<F>& q, double C,
    const SeminormFamily<F>& family, double domain_radius, int j_max = 20, int s_max = 4) {
    if (C <= 0.0) throw std::invalid_argument("quadratic_bound_check: C must be positive");
    QuadraticBoundReport rep;
    const std::size_t dim = x0.dim();

    std::vector<Vec<typename F::scalar>> dirs;
    for (std::size_t i = 0; i < dim; ++i) {
        dirs.push_back(basis_vec(field, dim, i));
        dirs.push_back(-basis_vec(field, dim, i));
    }
    if constexpr (!F::ultrametric) {
        if (dim > 1) {
            Vec<double> ramp;
            for (std::size_t i = 0; i < dim; ++i) ramp.c.push_back(1.0 / double(i + 1));
            dirs.push_back(ramp);
        }
    }

    const auto f0 = f(x0);
    for (const auto& [name, base] : family.items) {
        for (int s = 0; s <= s_max; ++s) {
            const auto p = base.scaled(std::pow(2.0, s));
            bool bound_ok = true;
            double worst = 0.0;
            std::size_t count = 0;
            for (const auto& d : dirs) {
                const double dn = base.eval(field, d);
                if (dn == 0.0) continue;
                auto t = field.one(); // dyadic 2^{-j}, p-adic p^{j} (abs p^{-j})
                for (int j = 0; j <= j_max; ++j) {
                    if (j > 0) {
                        if constexpr (F::ultrametric)
                            t = t * field.from_int(field.p);
                        else
                            t = t * 0.5;
                    }
                    const auto y = d.scaled(t);
                    if (base.eval(field, y) >= domain_radius) continue;
                    const auto rem = f(x0 + y) - f0 - df(x0, y);
                    const double lhs = q.eval(field, rem);
                    const double yp = p.eval(field, y);
                    if (yp == 0.0) continue;
                    const double rhs = C * yp * yp;
                    worst = std::max(worst, lhs / (yp * yp));
                    ++count;
                    if (lhs > rhs * (1.0 + 1e-12)) bound_ok = false;
                }
            }
            if (bound_ok) {
                rep.pass = true;
                rep.scaling = std::pow(2.0, s);
                rep.seminorm = name;
                rep.worst_ratio = worst;
                rep.probes = count;
                return rep;
            }
        }
    }
    return rep;
}

} // namespace lgx

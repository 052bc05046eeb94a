#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "lgx/matrix.hpp"
#include "lgx/scalar.hpp"
#include "lgx/seminorm.hpp"
#include "lgx/vector.hpp"

namespace lgx {

/// Radii of the nested neighbourhood chains, all measured against the
/// group's designated seminorm. As a target the group exposes U >= V >= W,
/// as a source P >= Q >= B >= A >= Z; both chains shrink by 1/4 per level
/// from a single configured outer radius.
struct DomainRadii {
    double U = 0, V = 0, W = 0;
    double P = 0, Q = 0, B = 0, A = 0, Z = 0;

    static DomainRadii nested(double outer) {
        if (outer <= 0.0) throw std::invalid_argument("DomainRadii: outer radius must be positive");
        DomainRadii r;
        r.U = r.P = outer;
        r.V = r.Q = outer / 4.0;
        r.W = r.B = outer / 16.0;
        r.A = outer / 64.0;
        r.Z = outer / 256.0;
        return r;
    }
};

/// A local Lie group in a chart at the identity: evaluable multiplication
/// and inversion on declared domains, with chart coordinates in a finite
/// dimensional space over the ground field.
template <class F>
struct LocalChartGroup {
    using S = typename F::scalar;
    using V = Vec<S>;

    F field;
    std::size_t dim = 0;
    std::function<V(const V&, const V&)> mul;
    std::function<V(const V&)> inv;
    DomainRadii radii;
    Seminorm<F> norm; // designated seminorm for the radii
    std::string name;

    V zero() const { return zero_vec(field, dim); }

    double norm_of(const V& x) const { return norm.eval(field, x); }

    bool in_ball(const V& x, double r) const { return norm_of(x) < r; }

    void require_in(const V& x, double r, const char* where) const {
        if (x.dim() != dim) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
        if (!in_ball(x, r)) throw std::domain_error(std::string(where) + ": argument outside domain ball");
    }

    /// Left-associated star power x * x * ... * x (k factors), k >= 1.
    V star_pow(const V& x, long k) const {
        if (k < 1) throw std::invalid_argument("star_pow: k must be >= 1");
        V acc = x;
        for (long i = 1; i < k; ++i) acc = mul(acc, x);
        return acc;
    }
};

/// Local multiplication with domain checks: x, y in the V-ball.
template <class F>
Vec<typename F::scalar> mu(const LocalChartGroup<F>& g, const Vec<typename F::scalar>& x,
                           const Vec<typename F::scalar>& y) {
    g.require_in(x, g.radii.V, "mu");
    g.require_in(y, g.radii.V, "mu");
    return g.mul(x, y);
}

/// sigma(x, y) = x * x * y, the real-case doubling map; sigma'(0,0)(u,v) = 2u + v.
template <class F>
Vec<typename F::scalar> sigma_real(const LocalChartGroup<F>& g, const Vec<typename F::scalar>& x,
                                   const Vec<typename F::scalar>& y) {
    static_assert(!F::ultrametric, "sigma_real: real field expected");
    g.require_in(x, g.radii.W, "sigma_real");
    g.require_in(y, g.radii.W, "sigma_real");
    return g.mul(g.mul(x, x), y);
}

/// sigma(x, y) = x^p * y, the p-adic analogue; sigma'(0,0)(u,v) = pu + v.
inline Vec<Padic> sigma_padic(const LocalChartGroup<PadicField>& g, const Vec<Padic>& x,
                              const Vec<Padic>& y) {
    g.require_in(x, g.radii.W, "sigma_padic");
    g.require_in(y, g.radii.W, "sigma_padic");
    return g.mul(g.star_pow(x, g.field.p), y);
}

/// tau(x, y, z) = x * y * z (left associated); tau'(0,0,0)(u,v,w) = u + v + w.
template <class F>
Vec<typename F::scalar> tau(const LocalChartGroup<F>& g, const Vec<typename F::scalar>& x,
                            const Vec<typename F::scalar>& y, const Vec<typename F::scalar>& z) {
    g.require_in(x, g.radii.W, "tau");
    g.require_in(y, g.radii.W, "tau");
    g.require_in(z, g.radii.W, "tau");
    return g.mul(g.mul(x, y), z);
}

/// j(x, y) = y^{-1} * x^{-1} * (x + y): the additivity defect of the chart.
template <class F>
Vec<typename F::scalar> j_defect(const LocalChartGroup<F>& g, const Vec<typename F::scalar>& x,
                                 const Vec<typename F::scalar>& y) {
    g.require_in(x, g.radii.Z, "j_defect");
    g.require_in(y, g.radii.Z, "j_defect");
    const auto sum = x + y;
    g.require_in(sum, g.radii.A, "j_defect");
    return g.mul(g.mul(g.inv(y), g.inv(x)), sum);
}

} // namespace lgx

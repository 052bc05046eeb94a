#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "lgx/local_group.hpp"

namespace lgx {

/// (E, +) in the identity chart: multiplication is vector addition.
template <class F>
LocalChartGroup<F> abelian_group(const F& field, std::size_t dim, double radius = 1.0) {
    LocalChartGroup<F> g;
    g.field = field;
    g.dim = dim;
    g.radii = DomainRadii::nested(radius);
    g.norm = max_abs_seminorm<F>();
    g.name = "abelian";
    g.mul = [](const Vec<typename F::scalar>& x, const Vec<typename F::scalar>& y) { return x + y; };
    g.inv = [](const Vec<typename F::scalar>& x) { return -x; };
    return g;
}

/// GL(n, R) near the identity in the matrix-logarithm chart:
/// mu(X, Y) = log(exp X exp Y), iota(X) = -X.
inline LocalChartGroup<RealField> matrix_log_group(std::size_t n, double radius = 0.2) {
    LocalChartGroup<RealField> g;
    g.field = RealField{};
    g.dim = n * n;
    g.radii = DomainRadii::nested(radius);
    g.norm = max_abs_seminorm<RealField>();
    g.name = "matrix_log";
    g.mul = [n](const Vec<double>& x, const Vec<double>& y) {
        const auto X = Mat<double>::from_vec(n, x);
        const auto Y = Mat<double>::from_vec(n, y);
        return mat_log(mat_mul(mat_exp(X), mat_exp(Y))).flatten();
    };
    g.inv = [](const Vec<double>& x) { return -x; };
    return g;
}

/// Upper-triangular unipotent 3x3 group in polynomial chart coordinates
/// (a, b, c) <-> [[1,a,c],[0,1,b],[0,0,1]]. Exact for rational inputs.
template <class F>
LocalChartGroup<F> heisenberg_group(const F& field, double radius = 1.0) {
    using S = typename F::scalar;
    LocalChartGroup<F> g;
    g.field = field;
    g.dim = 3;
    g.radii = DomainRadii::nested(radius);
    g.norm = max_abs_seminorm<F>();
    g.name = "heisenberg";
    g.mul = [](const Vec<S>& x, const Vec<S>& y) {
        return Vec<S>{x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]};
    };
    g.inv = [](const Vec<S>& x) {
        return Vec<S>{-x[0], -x[1], x[0] * x[1] - x[2]};
    };
    return g;
}

inline LocalChartGroup<RealField> heisenberg_group(double radius = 1.0) {
    return heisenberg_group(RealField{}, radius);
}

/// The multiplicative group of the reals near 1 in the chart t -> t - 1:
/// mu(x, y) = x + y + xy, iota(x) = -x / (1 + x).
inline LocalChartGroup<RealField> multiplicative_group(double radius = 0.5) {
    LocalChartGroup<RealField> g;
    g.field = RealField{};
    g.dim = 1;
    g.radii = DomainRadii::nested(radius);
    g.norm = max_abs_seminorm<RealField>();
    g.name = "multiplicative";
    g.mul = [](const Vec<double>& x, const Vec<double>& y) {
        return Vec<double>{x[0] + y[0] + x[0] * y[0]};
    };
    g.inv = [](const Vec<double>& x) { return Vec<double>{-x[0] / (1.0 + x[0])}; };
    return g;
}

/// The p-adic congruence group 1 + p M_n(Z_p) in the chart
/// x = (matrix - identity) / p, so mu(x, y) = x + y + p x y; all
/// arithmetic is exact rational.
inline LocalChartGroup<PadicField> padic_congruence_group(std::size_t n, long p, int prec = 24,
                                                          double radius = 1.5) {
    const PadicField field(p, prec);
    LocalChartGroup<PadicField> g;
    g.field = field;
    g.dim = n * n;
    g.radii = DomainRadii::nested(radius);
    g.norm = max_abs_seminorm<PadicField>();
    g.name = "padic_congruence";
    g.mul = [n, field](const Vec<Padic>& x, const Vec<Padic>& y) {
        const auto X = Mat<Padic>::from_vec(n, x);
        const auto Y = Mat<Padic>::from_vec(n, y);
        const auto XY = mat_mul(X, Y);
        return mat_add(mat_add(X, Y), mat_scale(XY, field.from_int(field.p))).flatten();
    };
    g.inv = [n, field](const Vec<Padic>& x) {
        const auto X = Mat<Padic>::from_vec(n, x);
        const auto ps = field.from_int(field.p);
        const auto M = mat_add(mat_identity(field, n), mat_scale(X, ps)); // I + pX
        const auto Minv = mat_inv(field, M);
        return mat_scale(mat_sub(Minv, mat_identity(field, n)),
                         field.one() / ps)
            .flatten();
    };
    return g;
}

} // namespace lgx

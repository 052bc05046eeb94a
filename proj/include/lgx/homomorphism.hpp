#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgx/builtin_groups.hpp"
#include "lgx/local_group.hpp"
#include "lgx/matrix.hpp"

namespace lgx {

/// Additive perturbation model: eta(x) with ||eta(x)|| <= eps ||x||^beta,
/// direction chosen deterministically from the probe coordinates.
struct NoiseModel {
    double eps = 0.0;
    double beta = 2.0;
};

/// A homomorphism between local groups, evaluable in charts only:
/// g = phi o f o psi^{-1} with g(0) = 0.
template <class F>
struct BlackBoxHom {
    using S = typename F::scalar;
    using V = Vec<S>;

    LocalChartGroup<F> source;
    LocalChartGroup<F> target;
    std::function<V(const V&)> eval;
    std::optional<double> alpha; // declared Hoelder exponent, if any
    std::optional<NoiseModel> noise;
    std::string name;

    V operator()(const V& x) const {
        auto v = eval(x);
        if (noise && noise->eps > 0.0) add_noise(x, v);
        return v;
    }

    bool perturbed() const { return noise && noise->eps > 0.0; }

    /// g(x * y) = g(x) * g(y) on probes, within tol per coordinate.
    /// Skipped (returns true) when a perturbation model is active.
    bool check_homomorphism(const std::vector<V>& probes, double tol) const {
        if (perturbed()) return true;
        for (std::size_t i = 0; i < probes.size(); ++i)
            for (std::size_t k = i; k < probes.size(); ++k) {
                const auto lhs = (*this)(source.mul(probes[i], probes[k]));
                const auto rhs = target.mul((*this)(probes[i]), (*this)(probes[k]));
                const auto d = lhs - rhs;
                for (std::size_t c = 0; c < d.dim(); ++c)
                    if (source.field.abs(d[c]) > tol) return false;
            }
        return true;
    }

private:
    void add_noise(const V& x, V& v) const {
        const double nx = source.norm_of(x);
        if (nx == 0.0) return; // keeps g(0) = 0
        const double mag = noise->eps * std::pow(nx, noise->beta);
        // deterministic unit direction from a coordinate hash
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& c : x.c) {
            const double d = source.field.abs(c);
            std::uint64_t bits;
            static_assert(sizeof(double) == sizeof(bits));
            std::memcpy(&bits, &d, sizeof(bits));
            h ^= bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        const std::size_t idx = static_cast<std::size_t>(h % v.dim());
        const double sign = (h >> 32) % 2 ? 1.0 : -1.0;
        if constexpr (!F::ultrametric) {
            v[idx] = v[idx] + sign * mag;
        } else {
            (void)sign;
            (void)idx; // perturbations are a real-case diagnostic
        }
    }
};

// ---------------------------------------------------------------------------
// Built-in real homomorphisms
// ---------------------------------------------------------------------------

/// Linear map between abelian charts: the trivial fixture, g = L.
inline BlackBoxHom<RealField> linear_hom(const Mat<double>& L, double radius = 1.0) {
    BlackBoxHom<RealField> h;
    h.source = abelian_group(RealField{}, L.n, radius);
    h.target = abelian_group(RealField{}, L.n, radius * 4.0);
    h.name = "linear";
    h.alpha = 1.0;
    h.eval = [L](const Vec<double>& x) {
        Vec<double> r = zero_vec(RealField{}, L.n);
        for (std::size_t i = 0; i < L.n; ++i)
            for (std::size_t j = 0; j < L.n; ++j) r[i] += L(i, j) * x[j];
        return r;
    };
    return h;
}

/// Conjugation by a fixed invertible S on GL(2) in matrix-log charts:
/// g(X) = log(S exp(X) S^{-1}); the derivative at 0 is Ad(S).
inline BlackBoxHom<RealField> conjugation_hom(const Mat<double>& S, double radius = 0.2) {
    const std::size_t n = S.n;
    BlackBoxHom<RealField> h;
    h.source = matrix_log_group(n, radius);
    h.target = matrix_log_group(n, radius * 8.0);
    h.name = "conjugation";
    h.alpha = 1.0;
    const auto Sinv = mat_inv(RealField{}, S);
    h.eval = [n, S, Sinv](const Vec<double>& x) {
        const auto X = Mat<double>::from_vec(n, x);
        return mat_log(mat_mul(mat_mul(S, mat_exp(X)), Sinv)).flatten();
    };
    return h;
}

/// Closed-form Ad(S) in the standard matrix-unit basis: the oracle for
/// conjugation_hom, X -> S X S^{-1} entrywise.
inline Mat<double> adjoint_matrix(const Mat<double>& S) {
    const std::size_t n = S.n;
    const auto Sinv = mat_inv(RealField{}, S);
    Mat<double> ad(n * n, 0.0);
    for (std::size_t col = 0; col < n * n; ++col) {
        Mat<double> E(n, 0.0);
        E.a[col] = 1.0;
        const auto out = mat_mul(mat_mul(S, E), Sinv);
        for (std::size_t row = 0; row < n * n; ++row) ad(row, col) = out.a[row];
    }
    return ad;
}

/// det: GL(2) -> R^x in the charts (matrix-log, t -> t - 1):
/// g(X) = det(exp X) - 1 = e^{tr X} - 1; derivative at 0 is the trace.
inline BlackBoxHom<RealField> det_hom(double radius = 0.2) {
    BlackBoxHom<RealField> h;
    h.source = matrix_log_group(2, radius);
    h.target = multiplicative_group(0.9);
    h.name = "det_minus_one";
    h.alpha = 1.0;
    h.eval = [](const Vec<double>& x) {
        const auto X = Mat<double>::from_vec(2, x);
        const auto E = mat_exp(X);
        return Vec<double>{E(0, 0) * E(1, 1) - E(0, 1) * E(1, 0) - 1.0};
    };
    return h;
}

/// Scaling automorphism of the Heisenberg group, (a,b,c) -> (ra, sb, rsc).
/// Linear in the chart, but the chart's squaring defect h does not vanish.
inline BlackBoxHom<RealField> heisenberg_scale_hom(double r, double s, double radius = 1.0) {
    BlackBoxHom<RealField> h;
    h.source = heisenberg_group(radius);
    h.target = heisenberg_group(radius * std::max({1.0, std::fabs(r), std::fabs(s), std::fabs(r * s)}) * 4.0);
    h.name = "heisenberg_scale";
    h.alpha = 1.0;
    h.eval = [r, s](const Vec<double>& x) {
        return Vec<double>{r * x[0], s * x[1], r * s * x[2]};
    };
    return h;
}

/// Heisenberg -> R^x: (a,b,c) -> e^{rate a} - 1 (kills the center).
inline BlackBoxHom<RealField> heisenberg_exp_hom(double rate = 1.0, double radius = 0.5) {
    BlackBoxHom<RealField> h;
    h.source = heisenberg_group(radius);
    h.target = multiplicative_group(0.9);
    h.name = "heisenberg_exp";
    h.alpha = 1.0;
    h.eval = [rate](const Vec<double>& x) { return Vec<double>{std::expm1(rate * x[0])}; };
    return h;
}

// ---------------------------------------------------------------------------
// Built-in p-adic homomorphisms
// ---------------------------------------------------------------------------

/// m-th power map on the congruence group 1 + p Z_p in its chart:
/// g(x) = ((1 + p x)^m - 1) / p, exactly rational.
inline BlackBoxHom<PadicField> padic_power_hom(long m, long p, int prec = 24) {
    const PadicField field(p, prec);
    BlackBoxHom<PadicField> h;
    h.source = padic_congruence_group(1, p, prec);
    h.target = padic_congruence_group(1, p, prec);
    h.name = "padic_power";
    h.alpha = 1.0;
    h.eval = [field, m](const Vec<Padic>& x) {
        const cpp_rational u = 1 + cpp_rational(field.p) * x[0].value();
        cpp_rational pw = 1;
        for (long i = 0; i < m; ++i) pw *= u;
        return Vec<Padic>{Padic((pw - 1) / field.p, field.p, field.prec)};
    };
    return h;
}

/// Linear map between p-adic abelian charts.
inline BlackBoxHom<PadicField> padic_linear_hom(const Mat<Padic>& L, long p, int prec = 24,
                                                double radius = 1.5) {
    const PadicField field(p, prec);
    BlackBoxHom<PadicField> h;
    h.source = abelian_group(field, L.n, radius);
    h.target = abelian_group(field, L.n, radius);
    h.name = "padic_linear";
    h.alpha = 1.0;
    h.eval = [L, field](const Vec<Padic>& x) {
        Vec<Padic> r = zero_vec(field, L.n);
        for (std::size_t i = 0; i < L.n; ++i)
            for (std::size_t j = 0; j < L.n; ++j) r[i] = r[i] + L(i, j) * x[j];
        return r;
    };
    return h;
}

// ---------------------------------------------------------------------------
// Synthetic evaluators (not homomorphisms; Hoelder / tangency fixtures)
// ---------------------------------------------------------------------------

/// g(x) = ||x||_max^beta * v: exact Hoelder exponent beta at 0.
inline std::function<Vec<double>(const Vec<double>&)> holder_synthetic(double beta,
                                                                       Vec<double> v) {
    return [beta, v](const Vec<double>& x) {
        double nx = 0.0;
        for (double c : x.c) nx = std::max(nx, std::fabs(c));
        return v.scaled(std::pow(nx, beta));
    };
}

/// Table-driven evaluator: exact lookup of (input, output) pairs, no
/// interpolation; used for regression fixtures loaded from JSON.
template <class F>
class TableEvaluator {
public:
    using V = Vec<typename F::scalar>;

    TableEvaluator(F field, std::vector<std::pair<V, V>> rows)
        : field_(std::move(field)) {
        for (auto& [in, out] : rows) table_[key(in)] = out;
    }

    V operator()(const V& x) const {
        const auto it = table_.find(key(x));
        if (it == table_.end())
            throw std::domain_error("TableEvaluator: input not in table");
        return it->second;
    }

private:
    std::string key(const V& x) const {
        std::ostringstream os;
        for (const auto& c : x.c) {
            if constexpr (F::ultrametric)
                os << c.str() << ';';
            else {
                os.precision(17);
                os << c << ';';
            }
        }
        return os.str();
    }

    F field_;
    std::map<std::string, V> table_;
};

} // namespace lgx

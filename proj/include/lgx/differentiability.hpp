#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lgx/holder.hpp"
#include "lgx/probes.hpp"
#include "lgx/seminorm.hpp"
#include "lgx/vector.hpp"

namespace lgx {

/// f^{[1]}(x, y, t) = (f(x + ty) - f(x)) / t for t != 0; at t = 0 the
/// value is the supplied directional derivative (there is no quotient).
template <class F>
Vec<typename F::scalar> difference_quotient(
    const F& field, const std::function<Vec<typename F::scalar>(const Vec<typename F::scalar>&)>& f,
    const Vec<typename F::scalar>& x, const Vec<typename F::scalar>& y,
    const typename F::scalar& t,
    const std::function<Vec<typename F::scalar>(const Vec<typename F::scalar>&,
                                                const Vec<typename F::scalar>&)>* df = nullptr) {
    if (field.abs(t) == 0.0) {
        if (!df)
            throw std::invalid_argument("difference_quotient: t = 0 needs a supplied derivative");
        return (*df)(x, y);
    }
    return (f(x + y.scaled(t)) - f(x)).scaled(field.one() / t);
}

struct TangencyRow {
    double eps = 0.0;
    double delta = 0.0; // largest probed radius that certifies eps; 0 if none
    bool pass = false;
};

struct TangencyReport {
    std::vector<TangencyRow> rows;
    bool pass = true;
};

/// Tangency to 0 of a remainder map h: for every eps find the largest
/// probed dyadic delta with ||h(y)||_q <= eps ||y||_p on all sampled y
/// with ||y||_p <= delta. Samples are the Hoelder direction set scaled
/// dyadically, so the scan is deterministic.
inline TangencyReport tangency_check(const std::function<Vec<double>(const Vec<double>&)>& h,
                                     std::size_t dim, const Seminorm<RealField>& p,
                                     const Seminorm<RealField>& q,
                                     const std::vector<double>& epsilons, double outer_radius = 1.0,
                                     int n_max = 30) {
    const RealField field;
    if (epsilons.empty()) throw std::invalid_argument("tangency_check: no epsilons supplied");
    struct Sample {
        double pn;
        double ratio; // ||h(y)||_q / ||y||_p
    };
    std::vector<Sample> samples;
    for (const auto& d : detail::holder_directions(dim)) {
        const double dn = p.eval(field, d);
        if (dn == 0.0) continue;
        for (int n = 0; n <= n_max; ++n) {
            const auto y = d.scaled(outer_radius * std::pow(2.0, -n) / dn);
            const double pn = p.eval(field, y);
            if (pn == 0.0) continue;
            samples.push_back({pn, q.eval(field, h(y)) / pn});
        }
    }

    TangencyReport rep;
    for (double eps : epsilons) {
        if (eps <= 0.0) throw std::invalid_argument("tangency_check: nonpositive eps");
        TangencyRow row;
        row.eps = eps;
        for (int j = 0; j <= n_max; ++j) {
            const double delta = outer_radius * std::pow(2.0, -j);
            bool ok = true;
            for (const auto& s : samples)
                if (s.pn <= delta && s.ratio > eps * (1.0 + 1e-12)) ok = false;
            if (ok) {
                row.delta = delta;
                row.pass = true;
                break;
            }
        }
        if (!row.pass) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

struct FeebleRow {
    std::size_t direction = 0;
    int n = 0;       // t = +/- 2^{-n}
    double error = 0.0; // max over the two signs of ||quotient - candidate||_q
};

struct FeebleReport {
    std::vector<FeebleRow> rows;
    bool pass = true;
};

/// Feeble differentiability at x: the extended quotient map must be
/// continuous at t = 0, probed on the grid t = +/- 2^{-n}. Each
/// direction's errors must shrink essentially monotonically (10% slack)
/// and end either tiny or an order of magnitude below where they started.
inline FeebleReport feeble_check(const std::function<Vec<double>(const Vec<double>&)>& f,
                                 const std::function<Vec<double>(const Vec<double>&, const Vec<double>&)>& candidate,
                                 const Vec<double>& x, const Seminorm<RealField>& q,
                                 double dir_scale = 0.01, int n_lo = 2, int n_hi = 20,
                                 double tiny = 1e-10) {
    const RealField field;
    FeebleReport rep;
    const auto dirs = detail::holder_directions(x.dim());
    for (std::size_t di = 0; di < dirs.size(); ++di) {
        const auto y = dirs[di].scaled(dir_scale);
        const auto L = candidate(x, y);
        std::vector<double> errs;
        for (int n = n_lo; n <= n_hi; ++n) {
            const double t = std::pow(2.0, -n);
            double e = 0.0;
            for (double s : {t, -t})
                e = std::max(e, q.eval(field, difference_quotient(field, f, x, y, s) - L));
            errs.push_back(e);
            rep.rows.push_back({di, n, e});
        }
        bool mono = true;
        for (std::size_t i = 1; i < errs.size(); ++i)
            if (errs[i] > errs[i - 1] * 1.1 + tiny && errs[i] > tiny) mono = false;
        const bool shrinks = errs.back() <= tiny || errs.back() <= 0.1 * errs.front();
        if (!(mono && shrinks)) rep.pass = false;
    }
    return rep;
}

/// Richardson-extrapolated central-difference directional derivative;
/// the stand-in when no closed-form derivative is available.
inline std::function<Vec<double>(const Vec<double>&, const Vec<double>&)> fd_derivative(
    std::function<Vec<double>(const Vec<double>&)> f, double h = 1e-5) {
    return [f = std::move(f), h](const Vec<double>& x, const Vec<double>& y) {
        const auto q1 = (f(x + y.scaled(h)) - f(x - y.scaled(h))).scaled(0.5 / h);
        const auto q2 = (f(x + y.scaled(h / 2)) - f(x - y.scaled(h / 2))).scaled(1.0 / h);
        return q2.scaled(4.0 / 3.0) - q1.scaled(1.0 / 3.0);
    };
}

struct ChainRuleReport {
    double worst_residual = 0.0;
    bool pass = false;
};

/// d(g o f)(x, y) = dg(f(x), df(x, y)): compare the composite's finite
/// difference quotient at small t against the chained derivatives.
inline ChainRuleReport chain_rule_test(
    const std::function<Vec<double>(const Vec<double>&)>& f,
    const std::function<Vec<double>(const Vec<double>&, const Vec<double>&)>& df,
    const std::function<Vec<double>(const Vec<double>&)>& g,
    const std::function<Vec<double>(const Vec<double>&, const Vec<double>&)>& dg,
    const std::vector<std::pair<Vec<double>, Vec<double>>>& probes, const Seminorm<RealField>& q,
    double tol = 1e-5) {
    const RealField field;
    ChainRuleReport rep;
    const auto comp = [&f, &g](const Vec<double>& x) { return g(f(x)); };
    for (const auto& [x, y] : probes) {
        const auto chained = dg(f(x), df(x, y));
        // Richardson pair of central quotients kills the O(t^2) term.
        const double t = 1e-4;
        const auto q1 = (comp(x + y.scaled(t)) - comp(x - y.scaled(t))).scaled(0.5 / t);
        const auto q2 = (comp(x + y.scaled(t / 2)) - comp(x - y.scaled(t / 2))).scaled(1.0 / t);
        const auto fd = q2.scaled(4.0 / 3.0) - q1.scaled(1.0 / 3.0);
        rep.worst_residual = std::max(rep.worst_residual, q.eval(field, fd - chained));
    }
    rep.pass = rep.worst_residual <= tol;
    return rep;
}

} // namespace lgx

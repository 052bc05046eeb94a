#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgx/extraction.hpp"
#include "lgx/homomorphism.hpp"

namespace lgx {

struct HolderConfig {
    int n_lo = 4;
    int n_hi = 24;
    double tiny = 1e-14; // values below this count as "locally constant"
};

struct HolderEstimate {
    double alpha_hat = 1.0;
    double c_hat = 0.0;     // constant from the intercept of the worst fit
    double residual = 0.0;  // max |fit - data| over the worst direction
    bool locally_constant = false;
    std::vector<double> direction_slopes; // one per probed direction
};

namespace detail {

/// Probe directions: +/- basis vectors plus the two standard diagonals.
inline std::vector<Vec<double>> holder_directions(std::size_t dim) {
    const RealField field;
    std::vector<Vec<double>> dirs;
    for (std::size_t i = 0; i < dim; ++i) {
        const auto e = basis_vec(field, dim, i);
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    auto diag = zero_vec(field, dim);
    auto alt = zero_vec(field, dim);
    auto ramp = zero_vec(field, dim); // asymmetric: catches commutator terms
    for (std::size_t i = 0; i < dim; ++i) {
        diag[i] = 1.0;
        alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
        ramp[i] = 1.0 / static_cast<double>(i + 1);
    }
    dirs.push_back(diag);
    dirs.push_back(alt);
    if (dim > 1) dirs.push_back(ramp);
    return dirs;
}

} // namespace detail

/// Worst-case Hoelder exponent of f at x0 from log-log regression over
/// dyadic scales: alpha_hat = min over directions of the slope of
/// log2 ||f(x0 + 2^{-n} r d) - f(x0)||_q against log2 ||2^{-n} r d||_p.
/// A fit needs at least 4 usable scales; directions where every
/// difference is below cfg.tiny are silent, and if all of them are the
/// map is reported locally constant.
inline HolderEstimate estimate_holder(const std::function<Vec<double>(const Vec<double>&)>& f,
                                      const Vec<double>& x0, const Seminorm<RealField>& p,
                                      const Seminorm<RealField>& q, double base_scale,
                                      const HolderConfig& cfg = {}) {
    if (base_scale <= 0.0) throw std::invalid_argument("estimate_holder: nonpositive scale");
    if (cfg.n_hi < cfg.n_lo + 3) throw std::invalid_argument("estimate_holder: need >= 4 scales");
    const RealField field;
    const auto f0 = f(x0);
    HolderEstimate est;
    bool any_signal = false;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& d : detail::holder_directions(x0.dim())) {
        std::vector<double> lx, ly;
        for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
            const auto y = d.scaled(base_scale * std::pow(2.0, -n));
            const double pn = p.eval(field, y);
            const double v = q.eval(field, f(x0 + y) - f0);
            if (v > cfg.tiny && pn > 0.0) {
                lx.push_back(std::log2(pn));
                ly.push_back(std::log2(v));
            }
        }
        if (lx.size() < 4) continue;
        const auto s = detail::fit_slope(lx, ly);
        if (!s) continue;
        any_signal = true;
        est.direction_slopes.push_back(*s);
        if (*s < worst) {
            worst = *s;
            double sx = 0, sy = 0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
            }
            const double intercept = (sy - *s * sx) / static_cast<double>(lx.size());
            est.c_hat = std::pow(2.0, intercept);
            double res = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i)
                res = std::max(res, std::fabs(ly[i] - (*s * lx[i] + intercept)));
            est.residual = res;
        }
    }
    if (!any_signal) {
        est.locally_constant = true;
        est.alpha_hat = 1.0;
        return est;
    }
    est.alpha_hat = std::clamp(worst, 1e-6, 1.0);
    return est;
}

inline HolderEstimate estimate_holder(const std::function<Vec<double>(const Vec<double>&)>& f,
                                      std::size_t dim, const Seminorm<RealField>& p,
                                      const Seminorm<RealField>& q, double base_scale,
                                      const HolderConfig& cfg = {}) {
    return estimate_holder(f, zero_vec(RealField{}, dim), p, q, base_scale, cfg);
}

inline HolderEstimate estimate_holder(const BlackBoxHom<RealField>& g,
                                      const HolderConfig& cfg = {}) {
    return estimate_holder([&g](const Vec<double>& x) { return g(x); }, g.source.dim,
                           g.source.norm, g.target.norm, g.source.radii.A / 2.0, cfg);
}

/// p-adic variant: scales p^n shrink the argument; regression in log base p.
inline HolderEstimate estimate_holder_padic(const std::function<Vec<Padic>(const Vec<Padic>&)>& f,
                                            const PadicField& field, std::size_t dim,
                                            const Seminorm<PadicField>& p,
                                            const Seminorm<PadicField>& q, int n_lo = 1,
                                            int n_hi = 12) {
    if (n_hi < n_lo + 3) throw std::invalid_argument("estimate_holder_padic: need >= 4 scales");
    HolderEstimate est;
    bool any_signal = false;
    double worst = std::numeric_limits<double>::infinity();
    const double lp = std::log(static_cast<double>(field.p));
    for (std::size_t i = 0; i < dim; ++i) {
        const auto e = basis_vec(field, dim, i);
        std::vector<double> lx, ly;
        Padic s = field.one();
        for (int n = 0; n <= n_hi; ++n) {
            if (n >= n_lo) {
                const auto y = e.scaled(s);
                const double pn = p.eval(field, y);
                const double v = q.eval(field, f(y));
                if (v > 0.0 && pn > 0.0) {
                    lx.push_back(std::log(pn) / lp);
                    ly.push_back(std::log(v) / lp);
                }
            }
            s = s * field.from_int(field.p);
        }
        if (lx.size() < 4) continue;
        const auto sl = detail::fit_slope(lx, ly);
        if (!sl) continue;
        any_signal = true;
        est.direction_slopes.push_back(*sl);
        worst = std::min(worst, *sl);
    }
    if (!any_signal) {
        est.locally_constant = true;
        est.alpha_hat = 1.0;
        return est;
    }
    est.alpha_hat = std::clamp(worst, 1e-6, 1.0);
    return est;
}

// ---------------------------------------------------------------------------
// Exponent bootstrap: alpha in ]1/3, 1/2] improves to (3/2) alpha
// ---------------------------------------------------------------------------

struct BootstrapRow {
    std::string kind; // "premise", "decay", "improved"
    std::size_t probe = 0;
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct BootstrapLedger {
    double alpha = 0.0;
    double c = 0.0;  // 2^{1 - (3/2)a} / (2^{1 - (3/2)a} - 1)
    double K1 = 0.0; // c 2^{2a - 1}
    double K = 0.0;  // 1 + K1
    double p_scaling = 1.0;
    std::vector<BootstrapRow> rows;
    bool premise_ok = true;
    bool pass = true;
};

/// Closed-form constants of the exponent improvement step.
inline void bootstrap_constants(double alpha, double& c, double& K1, double& K) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::invalid_argument("bootstrap_constants: alpha must lie in ]0, 1/2]");
    const double t = std::pow(2.0, 1.0 - 1.5 * alpha);
    c = t / (t - 1.0);
    K1 = c * std::pow(2.0, 2.0 * alpha - 1.0);
    K = 1.0 + K1;
}

/// Verify the exponent-improvement step on probes: calibrate the source
/// seminorm so the Hoelder and summand premises hold on the sampled data,
/// then check the improved decay ||g(2^{-n}x)||_q <= K 2^{-(3/2) a n} and
/// the improved Hoelder bound ||g(y)||_q <= K 2^{(3/2)a} ||y||_p^{(3/2)a}.
inline BootstrapLedger bootstrap_verify(const BlackBoxHom<RealField>& g, double alpha,
                                        const std::vector<Vec<double>>& probes, int n_max = 12,
                                        bool auto_scale = true) {
    const RealField field;
    BootstrapLedger led;
    led.alpha = alpha;
    bootstrap_constants(alpha, led.c, led.K1, led.K);
    const auto& p0 = g.source.norm;
    const auto& q = g.target.norm;

    double scale = 1.0;
    if (auto_scale) {
        for (const auto& x : probes) {
            for (int n = 0; n <= n_max; ++n) {
                const auto xs = x.scaled(std::pow(2.0, -n));
                const double arg = p0.eval(field, xs);
                if (arg <= 0.0) continue;
                const double gv = q.eval(field, g(xs));
                if (gv > 0.0)
                    scale = std::max(scale, std::pow(gv, 1.0 / alpha) / arg * (1.0 + 1e-12));
                if (g.source.in_ball(xs, g.source.radii.A)) {
                    const auto hx = defect_h(g, xs);
                    const auto sum = hx + defect_R(g.target, g(xs.scaled(0.5)), hx);
                    const double sv = q.eval(field, sum);
                    if (sv > 0.0)
                        scale = std::max(scale, std::pow(sv, 1.0 / (2.0 * alpha)) / arg * (1.0 + 1e-12));
                }
            }
        }
    }
    led.p_scaling = scale;
    const auto pnorm = [&](const Vec<double>& y) { return scale * p0.eval(field, y); };

    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto& x = probes[i];
        if (pnorm(x) >= 1.0) continue; // premise only speaks about the unit ball
        for (int n = 0; n <= n_max; ++n) {
            const auto xs = x.scaled(std::pow(2.0, -n));
            const double gv = q.eval(field, g(xs));

            BootstrapRow prem{"premise", i, n, gv, std::pow(pnorm(xs), alpha), false};
            prem.pass = prem.lhs <= prem.rhs * (1.0 + 1e-9) + 1e-15;
            if (!prem.pass) led.premise_ok = false;
            led.rows.push_back(prem);

            BootstrapRow dec{"decay", i, n, gv, led.K * std::pow(2.0, -1.5 * alpha * n), false};
            dec.pass = dec.lhs <= dec.rhs * (1.0 + 1e-9) + 1e-15;
            if (prem.pass && !dec.pass) led.pass = false;
            led.rows.push_back(dec);

            BootstrapRow imp{"improved", i, n, gv,
                             led.K * std::pow(2.0, 1.5 * alpha) * std::pow(pnorm(xs), 1.5 * alpha),
                             false};
            imp.pass = imp.lhs <= imp.rhs * (1.0 + 1e-9) + 1e-15;
            if (prem.pass && !imp.pass) led.pass = false;
            led.rows.push_back(imp);
        }
    }
    if (!led.premise_ok) led.pass = false;
    return led;
}

/// CSV export of a bootstrap ledger; fixed column order, deterministic.
inline std::string ledger_csv(const BootstrapLedger& led) {
    std::ostringstream os;
    os.precision(17);
    os << "kind,probe,n,lhs,rhs,pass\n";
    for (const auto& r : led.rows)
        os << r.kind << ',' << r.probe << ',' << r.n << ',' << r.lhs << ',' << r.rhs << ','
           << (r.pass ? 1 : 0) << '\n';
    return os.str();
}

struct BootstrapIteration {
    int steps = 0;
    double beta = 0.0; // final exponent in ]1/2, 1]
};

/// Iterate alpha -> (3/2) alpha until the exponent exceeds 1/2.
inline BootstrapIteration bootstrap_iterate(double alpha0) {
    if (!(alpha0 > 0.0 && alpha0 <= 1.0))
        throw std::invalid_argument("bootstrap_iterate: alpha0 must lie in ]0, 1]");
    BootstrapIteration it;
    double a = alpha0;
    while (a <= 0.5) {
        a *= 1.5;
        ++it.steps;
    }
    it.beta = std::min(a, 1.0);
    return it;
}

// ---------------------------------------------------------------------------
// Globalization and the C^1 => Lipschitz check
// ---------------------------------------------------------------------------

struct GlobalizeRow {
    Vec<double> base;
    double alpha_at_zero = 0.0;
    double alpha_translated = 0.0;
    bool pass = false;
};

struct GlobalizeReport {
    std::vector<GlobalizeRow> rows;
    bool pass = true;
};

/// The translated map y -> g(x0)^{-1} * g(x0 * y) has the same Hoelder
/// exponent at 0 as g itself; checked at each supplied base point.
inline GlobalizeReport globalize_check(const BlackBoxHom<RealField>& g,
                                       const std::vector<Vec<double>>& base_points,
                                       double tol = 0.05, const HolderConfig& cfg = {}) {
    GlobalizeReport rep;
    const auto at_zero = estimate_holder(g, cfg);
    for (const auto& x0 : base_points) {
        g.source.require_in(x0, g.source.radii.Z, "globalize_check");
        const auto gx0_inv = g.target.inv(g(x0));
        const auto translated = [&g, &x0, &gx0_inv](const Vec<double>& y) {
            return g.target.mul(gx0_inv, g(g.source.mul(x0, y)));
        };
        const auto est = estimate_holder(translated, g.source.dim, g.source.norm, g.target.norm,
                                         g.source.radii.Z / 2.0, cfg);
        GlobalizeRow row;
        row.base = x0;
        row.alpha_at_zero = at_zero.alpha_hat;
        row.alpha_translated = est.alpha_hat;
        row.pass = std::fabs(row.alpha_translated - row.alpha_at_zero) <= tol ||
                   (at_zero.locally_constant && est.locally_constant);
        if (!row.pass) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

struct LipschitzReport {
    double alpha_hat = 0.0;
    bool pass = false;
};

/// C^1 maps are Lipschitz near 0: the measured exponent must sit at
/// (numerically near) 1.
inline LipschitzReport lipschitz_of_c1_check(const BlackBoxHom<RealField>& g,
                                             const HolderConfig& cfg = {}) {
    const auto est = estimate_holder(g, cfg);
    LipschitzReport rep;
    rep.alpha_hat = est.alpha_hat;
    rep.pass = est.locally_constant || est.alpha_hat >= 0.95;
    return rep;
}

} // namespace lgx

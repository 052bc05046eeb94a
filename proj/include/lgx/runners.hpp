#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgx/differentiability.hpp"
#include "lgx/extraction.hpp"
#include "lgx/holder.hpp"
#include "lgx/json_io.hpp"
#include "lgx/report.hpp"

namespace lgx {

namespace rundetail {

inline std::vector<Vec<double>> real_probes(const json& cfg, const BlackBoxHom<RealField>& hom,
                                            std::uint64_t seed, int count_default = 5) {
    std::vector<Vec<double>> probes;
    if (cfg.contains("probes")) {
        for (const auto& p : cfg.at("probes")) probes.push_back(parse_vec_real(p));
    } else {
        Rng rng(seed);
        const int count = cfg.value("probe_count", count_default);
        for (int i = 0; i < count; ++i)
            probes.push_back(sample_ball(RealField{}, rng, hom.source.norm, hom.source.dim,
                                         hom.source.radii.A));
    }
    return probes;
}

inline std::string label(std::size_t i) { return std::to_string(i); }

inline double max_coord_abs(const RealField& f, const Vec<double>& v) {
    double m = 0.0;
    for (double c : v.c) m = std::max(m, f.abs(c));
    return m;
}

inline double max_coord_abs(const PadicField& f, const Vec<Padic>& v) {
    double m = 0.0;
    for (const auto& c : v.c) m = std::max(m, f.abs(c));
    return m;
}

/// alpha resolution: explicit config value > declared on the map >
/// estimated; values <= 1/2 are lifted via the bootstrap only on request.
inline double resolve_alpha(const json& cfg, const BlackBoxHom<RealField>& hom, Report& rep) {
    double alpha;
    if (cfg.contains("alpha"))
        alpha = cfg.at("alpha").get<double>();
    else if (hom.alpha)
        alpha = *hom.alpha;
    else
        alpha = estimate_holder(hom).alpha_hat;
    rep.set("alpha_input", alpha);
    if (alpha <= 0.5) {
        if (!cfg.value("bootstrap", false))
            throw std::invalid_argument(
                "alpha <= 1/2: run the `bootstrap` subcommand first, or set "
                "\"bootstrap\": true to lift the exponent");
        const auto it = bootstrap_iterate(alpha);
        rep.set("bootstrap_steps", static_cast<double>(it.steps));
        alpha = it.beta;
    }
    rep.set("alpha_effective", alpha);
    return alpha;
}

} // namespace rundetail

inline Report run_extract(const json& cfg, std::uint64_t seed) {
    const RealField field;
    Report rep;
    rep.id = "extract";
    auto hom = parse_hom_real(cfg.at("hom"));
    rep.set("hom", hom.name);

    ExtractionConfig ec;
    ec.tol = cfg.value("tol", 1e-10);
    ec.n_max = cfg.value("n_max", 40);
    ec.seed = seed;
    const double alpha = rundetail::resolve_alpha(cfg, hom, rep);
    ec.alpha = alpha;

    const auto probes = rundetail::real_probes(cfg, hom, seed);
    rep.add({"homomorphism", "all", "-", hom.check_homomorphism(probes, 1e-8) ? 0.0 : 1.0, 0.0,
             hom.check_homomorphism(probes, 1e-8)});

    const int n_tel = std::min(ec.n_max, 20);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto part = dyadic_partial(hom, probes[i], n_tel, ec.n_max);
        const double d = rundetail::max_coord_abs(field, part.direct - part.series);
        rep.add({"telescoping", rundetail::label(i), std::to_string(n_tel), d, 1e-9, d <= 1e-9});

        const auto lrep = lambda_limit(hom, probes[i], ec);
        rep.add({"converged", rundetail::label(i), std::to_string(lrep.n_stop),
                 lrep.converged ? 1.0 : 0.0, 1.0, lrep.converged});
        if (!lrep.degenerate) {
            double wit = 0.0;
            for (const auto& [name, w] : lrep.certificate.witness_sup) wit = std::max(wit, w);
            rep.add({"certificate", rundetail::label(i), "-", wit, lrep.certificate.cap,
                     lrep.certificate.pass});
            for (const auto& [name, tb] : lrep.tail)
                rep.add({"tail_bound_" + name, rundetail::label(i), "-", tb.K, tb.K, tb.holds});
            if (lrep.decay_slope)
                rep.add({"summand_slope", rundetail::label(i), "-", *lrep.decay_slope,
                         1.0 - 2.0 * lrep.alpha, true});
        }
    }

    const auto cand = linearize(hom, ec);
    rep.add({"linearize", "heldout", "-", cand.worst_residual, ec.validate_tol, cand.validated});
    for (std::size_t i = 0; i < cand.columns.size(); ++i)
        rep.set("lambda_col_" + std::to_string(i), vec_json(cand.columns[i]).dump());

    const auto res = total_diff_residual(hom, cand, probes, alpha, ec);
    rep.set("residual_c", res.c);
    rep.set("residual_p_scaling", res.p_scaling);
    for (std::size_t i = 0; i < res.rows.size(); ++i)
        rep.add({"residual", std::to_string(i / 10), std::to_string(i % 10), res.rows[i].lhs,
                 res.rows[i].rhs, res.rows[i].pass});
    if (res.slope)
        rep.add({"residual_slope", "all", "-", *res.slope, 2.0 * alpha - 0.1, res.slope_ok});
    return rep;
}

inline Report run_holder(const json& cfg, std::uint64_t seed) {
    Report rep;
    rep.id = "holder";
    HolderConfig hc;
    hc.n_lo = cfg.value("n_lo", 4);
    hc.n_hi = cfg.value("n_hi", 24);

    HolderEstimate est;
    if (cfg.contains("synthetic")) {
        const auto& s = cfg.at("synthetic");
        const double beta = s.at("beta").get<double>();
        const std::size_t dim = s.at("dim").get<std::size_t>();
        auto v = s.contains("v") ? parse_vec_real(s.at("v")) : basis_vec(RealField{}, dim, 0);
        const auto f = holder_synthetic(beta, std::move(v));
        est = estimate_holder(f, dim, max_abs_seminorm<RealField>(),
                              max_abs_seminorm<RealField>(), cfg.value("scale", 0.5), hc);
        rep.set("synthetic_beta", beta);
    } else {
        auto hom = parse_hom_real(cfg.at("hom"));
        rep.set("hom", hom.name);
        est = estimate_holder(hom, hc);
        if (cfg.contains("base_points")) {
            std::vector<Vec<double>> pts;
            for (const auto& p : cfg.at("base_points")) pts.push_back(parse_vec_real(p));
            const auto glob = globalize_check(hom, pts, cfg.value("globalize_tol", 0.05), hc);
            for (std::size_t i = 0; i < glob.rows.size(); ++i)
                rep.add({"globalize", rundetail::label(i), "-", glob.rows[i].alpha_translated,
                         glob.rows[i].alpha_at_zero, glob.rows[i].pass});
        }
        (void)seed;
    }
    rep.set("alpha_hat", est.alpha_hat);
    rep.set("c_hat", est.c_hat);
    rep.set("locally_constant", est.locally_constant ? "true" : "false");
    if (cfg.contains("expect_alpha")) {
        const double want = cfg.at("expect_alpha").get<double>();
        const double tol = cfg.value("expect_tol", 0.05);
        rep.add({"holder_estimate", "0", "-", est.alpha_hat, want,
                 est.locally_constant ? false : std::fabs(est.alpha_hat - want) <= tol});
    } else {
        rep.add({"holder_estimate", "0", "-", est.alpha_hat, est.alpha_hat, true});
    }
    return rep;
}

inline Report run_bootstrap(const json& cfg, std::uint64_t seed) {
    Report rep;
    rep.id = "bootstrap";
    if (cfg.contains("alpha0")) {
        const auto it = bootstrap_iterate(cfg.at("alpha0").get<double>());
        rep.set("iterate_k", static_cast<double>(it.steps));
        rep.set("iterate_beta", it.beta);
        rep.add({"iterate_range", "0", "-", it.beta, 0.5, it.beta > 0.5 && it.beta <= 1.0});
    }
    if (!cfg.contains("alpha")) return rep;
    const double alpha = cfg.at("alpha").get<double>();
    double c, K1, K;
    bootstrap_constants(alpha, c, K1, K);
    rep.set("c", c);
    rep.set("K1", K1);
    rep.set("K", K);
    rep.set("alpha_out", 1.5 * alpha);
    if (cfg.contains("hom")) {
        auto hom = parse_hom_real(cfg.at("hom"));
        rep.set("hom", hom.name);
        const auto probes = rundetail::real_probes(cfg, hom, seed, 4);
        const auto led = bootstrap_verify(hom, alpha, probes, cfg.value("n_max", 12));
        rep.set("p_scaling", led.p_scaling);
        for (const auto& r : led.rows)
            rep.add({"bootstrap_" + r.kind, rundetail::label(r.probe), std::to_string(r.n), r.lhs,
                     r.rhs, r.pass});
    }
    return rep;
}

inline Report run_padic(const json& cfg, std::uint64_t seed) {
    Report rep;
    rep.id = "padic";
    auto hom = parse_hom_padic(cfg.at("hom"));
    const auto& field = hom.source.field;
    rep.set("hom", hom.name);
    rep.set("p", static_cast<double>(field.p));
    rep.set("prec", static_cast<double>(field.prec));

    std::vector<Vec<Padic>> probes;
    if (cfg.contains("probes")) {
        for (const auto& p : cfg.at("probes")) probes.push_back(parse_vec_padic(p, field));
    } else {
        Rng rng(seed);
        const int count = cfg.value("probe_count", 5);
        for (int i = 0; i < count; ++i)
            probes.push_back(sample_ball(field, rng, hom.source.norm, hom.source.dim,
                                         hom.source.radii.A));
    }

    // identity check at the configured depth; extraction runs to the
    // precision cap so the partials can actually stabilize
    const int n_identity = cfg.value("n_max", 6);
    ExtractionConfig ec;
    ec.n_max = cfg.value("extract_n_max", field.prec - 2);
    ec.seed = seed;
    if (cfg.contains("alpha")) ec.alpha = cfg.at("alpha").get<double>();

    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto part = padic_partial(hom, probes[i], n_identity);
        const double d = rundetail::max_coord_abs(field, part.direct - part.series);
        rep.add({"telescoping_exact", rundetail::label(i), std::to_string(n_identity), d, 0.0,
                 d == 0.0});
        const auto lrep = lambda_limit_padic(hom, probes[i], ec);
        rep.add({"converged", rundetail::label(i), std::to_string(lrep.n_stop),
                 lrep.converged ? 1.0 : 0.0, 1.0, lrep.converged});
    }

    const auto cand = linearize_padic(hom, ec);
    const double window = std::pow(static_cast<double>(field.p), -(field.prec - 4));
    rep.add({"linearize", "heldout", "-", cand.worst_residual, window, cand.validated});
    for (std::size_t i = 0; i < cand.columns.size(); ++i)
        rep.set("lambda_col_" + std::to_string(i), vec_json(cand.columns[i]).dump());

    if (cfg.contains("expect_lambda")) {
        const auto want = cfg.at("expect_lambda");
        for (std::size_t i = 0; i < cand.columns.size(); ++i) {
            const auto col = parse_vec_padic(want.at(i), field);
            const double d = rundetail::max_coord_abs(field, cand.columns[i] - col);
            rep.add({"lambda_expected", rundetail::label(i), "-", d, window, d <= window});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// verify: the full invariant suite over the built-in corpus
// ---------------------------------------------------------------------------

namespace rundetail {

// frozen oracle values for the bootstrap constants (independent
// high-precision evaluation of the closed forms)
struct FrozenBootstrap {
    double alpha, c, K1, K;
};
inline const FrozenBootstrap frozen_bootstrap[3] = {
    {0.3, 3.1547744494955625, 2.3908719483520726, 3.3908719483520726},
    {0.4, 4.1298129601266696, 3.5952109987459061, 4.5952109987459061},
    {0.5, 6.2852135078832452, 6.2852135078832452, 7.2852135078832452},
};

inline std::vector<BlackBoxHom<RealField>> real_corpus() {
    Mat<double> L(2, 0.0);
    L(0, 0) = 2.0;
    L(0, 1) = -1.0;
    L(1, 0) = 0.5;
    L(1, 1) = 3.0;
    Mat<double> S(2, 0.0);
    S(0, 0) = 1.0;
    S(0, 1) = 1.0;
    S(1, 1) = 1.0;
    std::vector<BlackBoxHom<RealField>> corpus;
    corpus.push_back(linear_hom(L));
    corpus.push_back(conjugation_hom(S));
    corpus.push_back(det_hom());
    corpus.push_back(heisenberg_scale_hom(2.0, 3.0));
    corpus.push_back(heisenberg_exp_hom(1.0));
    return corpus;
}

inline std::optional<double> fit_slope_vs_index(const std::vector<double>& vals) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] > 1e-13) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log2(vals[i]));
        }
    return detail::fit_slope(xs, ys);
}

} // namespace rundetail

inline Report run_verify(const json& cfg, std::uint64_t seed) {
    const RealField field;
    Report rep;
    rep.id = "verify";
    rep.set("seed", static_cast<double>(seed));
    const auto corpus = rundetail::real_corpus();

    // telescoping identity on the whole real corpus
    for (std::size_t ci = 0; ci < corpus.size(); ++ci) {
        const auto& hom = corpus[ci];
        Rng rng(seed + ci);
        for (int i = 0; i < 5; ++i) {
            const auto x =
                sample_ball(field, rng, hom.source.norm, hom.source.dim, hom.source.radii.A);
            const auto part = dyadic_partial(hom, x, 20);
            const double d = rundetail::max_coord_abs(field, part.direct - part.series);
            rep.add({"telescoping_" + hom.name, rundetail::label(i), "20", d, 1e-9, d <= 1e-9});
        }
    }

    // exact p-adic identity: congruence group power map and a linear map
    {
        auto pw = padic_power_hom(7, 5, 18);
        const PadicField pf(5, 18);
        Mat<Padic> L1(1, pf.zero());
        L1(0, 0) = pf.from_int(7);
        auto lin = padic_linear_hom(L1, 5, 18, 1.5);
        std::vector<BlackBoxHom<PadicField>> pcorpus;
        pcorpus.push_back(std::move(pw));
        pcorpus.push_back(std::move(lin));
        for (std::size_t ci = 0; ci < pcorpus.size(); ++ci) {
            const auto& hom = pcorpus[ci];
            Rng rng(seed + 100 + ci);
            for (int i = 0; i < 5; ++i) {
                const auto x = sample_ball(hom.source.field, rng, hom.source.norm,
                                           hom.source.dim, hom.source.radii.A);
                const auto part = padic_partial(hom, x, 6);
                const double d =
                    rundetail::max_coord_abs(hom.source.field, part.direct - part.series);
                rep.add({"padic_exact_" + hom.name, rundetail::label(i), "6", d, 0.0, d == 0.0});
            }
        }
        // p-adic derivative recovery: the 7th power map has derivative (7)
        ExtractionConfig pec;
        pec.seed = seed;
        const auto cand = linearize_padic(pcorpus[0], pec);
        const auto diff = cand.columns[0] - Vec<Padic>{pcorpus[0].source.field.from_int(7)};
        const double d = rundetail::max_coord_abs(pcorpus[0].source.field, diff);
        const double window = std::pow(5.0, -(18 - 4));
        rep.add({"padic_recovery", "7th_power", "-", d, window, d <= window});
    }

    // derivative recovery against oracles
    ExtractionConfig ec;
    ec.seed = seed;
    {
        const auto& conj = corpus[1];
        const auto cand = linearize(conj, ec);
        Mat<double> S(2, 0.0);
        S(0, 0) = 1.0;
        S(0, 1) = 1.0;
        S(1, 1) = 1.0;
        const auto ad = adjoint_matrix(S);
        double worst = 0.0;
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 4; ++i)
                worst = std::max(worst, std::fabs(cand.columns[j][i] - ad(i, j)));
        rep.add({"recovery_adjoint", "entrywise", "-", worst, 1e-6, worst <= 1e-6});
        rep.add({"recovery_heldout", "conjugation", "-", cand.worst_residual, ec.validate_tol,
                 cand.validated});
    }
    {
        const auto& det = corpus[2];
        const auto cand = linearize(det, ec);
        // finite-difference oracle for the trace functional
        const auto df = fd_derivative([&det](const Vec<double>& x) { return det(x); }, 1e-5);
        double worst = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            const auto o = df(zero_vec(field, 4), basis_vec(field, 4, j));
            worst = std::max(worst, std::fabs(cand.columns[j][0] - o[0]));
        }
        rep.add({"recovery_trace", "fd_oracle", "-", worst, 1e-6, worst <= 1e-6});
    }

    // rate checks: summand decay slope 1-2a and additivity defect -(2a-1).
    // (heisenberg_scale is linear in its chart, so its summands cancel
    // exactly; the nonlinear det and exp fixtures carry the rate signal)
    for (const auto* hom : {&corpus[2], &corpus[4]}) {
        Rng rng(seed + 7);
        const auto x =
            sample_ball(field, rng, hom->source.norm, hom->source.dim, hom->source.radii.A);
        ExtractionConfig slow = ec;
        slow.tol = 1e-14; // keep iterating so enough summands accumulate
        slow.n_max = 16;
        const auto lrep = lambda_limit(*hom, x, slow);
        const bool ok = lrep.decay_slope && std::fabs(*lrep.decay_slope - (-1.0)) <= 0.15;
        rep.add({"summand_slope_" + hom->name, "0", "-",
                 lrep.decay_slope ? *lrep.decay_slope : 0.0, -1.0, ok});
    }
    for (const auto* hom : {&corpus[2], &corpus[4]}) {
        Rng rng(seed + 8);
        const auto x =
            sample_ball(field, rng, hom->source.norm, hom->source.dim, hom->source.radii.Z);
        const auto y =
            sample_ball(field, rng, hom->source.norm, hom->source.dim, hom->source.radii.Z);
        std::vector<double> norms;
        double agree = 0.0;
        for (int n = 2; n <= 12; ++n) {
            const auto d = additivity_defect(*hom, x, y, n);
            norms.push_back(hom->target.norm.eval(field, d.direct));
            agree = std::max(agree,
                             rundetail::max_coord_abs(field, d.direct - d.via_rn));
        }
        rep.add({"additivity_identity_" + hom->name, "0", "-", agree, 1e-9, agree <= 1e-9});
        const auto slope = rundetail::fit_slope_vs_index(norms);
        const bool ok = slope && std::fabs(*slope - (-1.0)) <= 0.15;
        rep.add({"additivity_slope_" + hom->name, "0", "-", slope ? *slope : 0.0, -1.0, ok});
    }

    // Mackey-Cauchy certificate and tail bound on the nonlinear fixtures
    for (const auto* hom : {&corpus[2], &corpus[3], &corpus[4]}) {
        Rng rng(seed + 9);
        const auto x =
            sample_ball(field, rng, hom->source.norm, hom->source.dim, hom->source.radii.A);
        const auto lrep = lambda_limit(*hom, x, ec);
        double wit = 0.0;
        for (const auto& [name, w] : lrep.certificate.witness_sup) wit = std::max(wit, w);
        rep.add({"certificate_" + hom->name, "0", "-", wit, lrep.certificate.cap,
                 lrep.certificate.pass});
        bool tails = true;
        for (const auto& [name, tb] : lrep.tail)
            if (!tb.holds) tails = false;
        rep.add({"tail_bound_" + hom->name, "0", "-", tails ? 0.0 : 1.0, 0.0, tails});
    }

    // bootstrap constants against the frozen oracle, ledger on a smooth
    // fixture, and the exponent iteration
    for (const auto& fz : rundetail::frozen_bootstrap) {
        double c, K1, K;
        bootstrap_constants(fz.alpha, c, K1, K);
        const double d =
            std::max({std::fabs(c - fz.c), std::fabs(K1 - fz.K1), std::fabs(K - fz.K)});
        std::ostringstream a;
        a << fz.alpha;
        rep.add({"bootstrap_constants", a.str(), "-", d, 1e-12, d <= 1e-12});
    }
    {
        Rng rng(seed + 11);
        std::vector<Vec<double>> probes;
        for (int i = 0; i < 4; ++i)
            probes.push_back(sample_ball(field, rng, corpus[2].source.norm, 4,
                                         corpus[2].source.radii.A));
        const auto led = bootstrap_verify(corpus[2], 0.5, probes, 10);
        rep.add({"bootstrap_ledger", "det", "-", led.pass ? 0.0 : 1.0, 0.0,
                 led.pass && led.premise_ok});
        Rng arng(seed + 12);
        bool iter_ok = true;
        for (int i = 0; i < 100; ++i) {
            const auto it = bootstrap_iterate(arng.uniform(0.01, 1.0));
            if (!(it.beta > 0.5 && it.beta <= 1.0)) iter_ok = false;
        }
        rep.add({"bootstrap_iterate", "random100", "-", iter_ok ? 0.0 : 1.0, 0.0, iter_ok});
    }

    // total-differentiability residual on the recovery fixtures
    for (const auto* hom : {&corpus[1], &corpus[2]}) {
        const auto cand = linearize(*hom, ec);
        Rng rng(seed + 13);
        std::vector<Vec<double>> probes;
        for (int i = 0; i < 4; ++i)
            probes.push_back(sample_ball(field, rng, hom->source.norm, hom->source.dim,
                                         hom->source.radii.A));
        const auto res = total_diff_residual(*hom, cand, probes, 1.0, ec);
        rep.add({"residual_bound_" + hom->name, "all", "-", res.bound_holds ? 0.0 : 1.0, 0.0,
                 res.bound_holds});
        rep.add({"residual_slope_" + hom->name, "all", "-", res.slope ? *res.slope : 2.0, 1.9,
                 res.slope_ok});
    }

    // Hoelder estimator calibration and globalization
    for (double beta : {0.3, 0.5, 0.7, 1.0}) {
        const auto f = holder_synthetic(beta, Vec<double>{1.0, -0.5});
        const auto est = estimate_holder(f, 2, max_abs_seminorm<RealField>(),
                                         max_abs_seminorm<RealField>(), 0.5);
        std::ostringstream b;
        b << beta;
        rep.add({"holder_calibration", b.str(), "-", est.alpha_hat, beta,
                 std::fabs(est.alpha_hat - beta) <= 0.05});
    }
    for (const auto* hom : {&corpus[1], &corpus[2], &corpus[3]}) {
        Rng rng(seed + 14);
        std::vector<Vec<double>> pts;
        for (int i = 0; i < 5; ++i)
            pts.push_back(sample_ball(field, rng, hom->source.norm, hom->source.dim,
                                      hom->source.radii.Z));
        const auto glob = globalize_check(*hom, pts, 0.05);
        double worst = 0.0;
        for (const auto& r : glob.rows)
            worst = std::max(worst, std::fabs(r.alpha_translated - r.alpha_at_zero));
        rep.add({"globalize_" + hom->name, "5pts", "-", worst, 0.05, glob.pass});
    }
    for (const auto* hom : {&corpus[0], &corpus[1], &corpus[2]}) {
        const auto lip = lipschitz_of_c1_check(*hom);
        rep.add({"lipschitz_" + hom->name, "0", "-", lip.alpha_hat, 0.95, lip.pass});
    }

    // differentiability predicates over the built-in C^2 corpus
    {
        const auto mlg = matrix_log_group(2, 0.2);
        const auto qn = max_abs_seminorm<RealField>();
        const auto pn = max_abs_seminorm<RealField>();
        const std::vector<double> eps = {1e-1, 1e-2, 1e-3};

        // mu in joined coordinates, derivative u + v
        const auto fmu = [&mlg](const Vec<double>& z) {
            return mlg.mul(slice(z, 0, 4), slice(z, 4, 4));
        };
        const auto hmu = [&fmu](const Vec<double>& z) {
            return fmu(z) - (slice(z, 0, 4) + slice(z, 4, 4));
        };
        auto tan = tangency_check(hmu, 8, pn, qn, eps, mlg.radii.W);
        rep.add({"tangency_mu", "matrix_log", "-", tan.pass ? 0.0 : 1.0, 0.0, tan.pass});
        const auto dmu = [](const Vec<double>& /*x*/, const Vec<double>& y) {
            return slice(y, 0, 4) + slice(y, 4, 4);
        };
        auto feeb = feeble_check(fmu, dmu, zero_vec(field, 8), qn, 0.002, 2, 12, 1e-9);
        rep.add({"feeble_mu", "matrix_log", "-", feeb.pass ? 0.0 : 1.0, 0.0, feeb.pass});
        rep.add({"total_implies_feeble_mu", "matrix_log", "-",
                 (tan.pass && !feeb.pass) ? 1.0 : 0.0, 0.0, !(tan.pass && !feeb.pass)});

        // sigma with derivative 2u + v
        const auto fsig = [&mlg](const Vec<double>& z) {
            return sigma_real(mlg, slice(z, 0, 4), slice(z, 4, 4));
        };
        const auto hsig = [&fsig](const Vec<double>& z) {
            return fsig(z) - (slice(z, 0, 4).scaled(2.0) + slice(z, 4, 4));
        };
        tan = tangency_check(hsig, 8, pn, qn, eps, mlg.radii.W / 2.0);
        rep.add({"tangency_sigma", "matrix_log", "-", tan.pass ? 0.0 : 1.0, 0.0, tan.pass});

        // det fixture against its recovered derivative
        const auto& det = corpus[2];
        const auto cand = linearize(det, ec);
        const auto hdet = [&det, &cand, &field](const Vec<double>& y) {
            return det(y) - cand.apply(field, y);
        };
        tan = tangency_check(hdet, 4, pn, qn, eps, det.source.radii.A);
        rep.add({"tangency_det", "fixture", "-", tan.pass ? 0.0 : 1.0, 0.0, tan.pass});
        const auto ddet = [&cand, &field](const Vec<double>& /*x*/, const Vec<double>& y) {
            return cand.apply(field, y);
        };
        feeb = feeble_check([&det](const Vec<double>& y) { return det(y); }, ddet,
                            zero_vec(field, 4), qn, 0.001, 2, 12, 1e-9);
        rep.add({"feeble_det", "fixture", "-", feeb.pass ? 0.0 : 1.0, 0.0, feeb.pass});

        // the |x| counterexample must fail feeble differentiability at 0
        const auto fabsmap = [](const Vec<double>& x) {
            return Vec<double>{std::fabs(x[0])};
        };
        const auto zero_cand = [&field](const Vec<double>&, const Vec<double>&) {
            return zero_vec(field, 1);
        };
        const auto cex = feeble_check(fabsmap, zero_cand, zero_vec(field, 1), qn, 0.01);
        rep.add({"feeble_abs_counterexample", "0", "-", cex.pass ? 1.0 : 0.0, 0.0, !cex.pass});

        // chain rules: iota o mu(x0, .) on matrix_log, and a scalar pair
        Rng rng(seed + 15);
        const auto x0 = sample_ball(field, rng, mlg.norm, 4, mlg.radii.Z);
        const auto fleft = [&mlg, &x0](const Vec<double>& z) { return mlg.mul(x0, z); };
        const auto gright = [&mlg](const Vec<double>& w) { return mlg.inv(w); };
        const auto dgi = [](const Vec<double>& /*w*/, const Vec<double>& u) { return -u; };
        std::vector<std::pair<Vec<double>, Vec<double>>> cprobes;
        for (int i = 0; i < 3; ++i)
            cprobes.emplace_back(sample_ball(field, rng, mlg.norm, 4, mlg.radii.Z),
                                 sample_ball(field, rng, mlg.norm, 4, mlg.radii.Z));
        auto cr = chain_rule_test(fleft, fd_derivative(fleft), gright, dgi, cprobes, qn, 1e-5);
        rep.add({"chain_rule_group", "iota_after_mu", "-", cr.worst_residual, 1e-5, cr.pass});

        const auto fsq = [](const Vec<double>& x) { return Vec<double>{x[0] * x[0]}; };
        const auto dfsq = [](const Vec<double>& x, const Vec<double>& y) {
            return Vec<double>{2.0 * x[0] * y[0]};
        };
        const auto gcb = [](const Vec<double>& u) { return Vec<double>{u[0] * u[0] * u[0]}; };
        const auto dgcb = [](const Vec<double>& u, const Vec<double>& v) {
            return Vec<double>{3.0 * u[0] * u[0] * v[0]};
        };
        std::vector<std::pair<Vec<double>, Vec<double>>> sprobes = {
            {Vec<double>{1.0}, Vec<double>{1.0}}};
        cr = chain_rule_test(fsq, dfsq, gcb, dgcb, sprobes, qn, 1e-5);
        rep.add({"chain_rule_scalar", "square_then_cube", "-", cr.worst_residual, 1e-5, cr.pass});
    }

    (void)cfg;
    return rep;
}

} // namespace lgx

#include "catch_amalgamated.hpp"

#include "lgx/extraction.hpp"
#include "lgx/homomorphism.hpp"

using namespace lgx;
using Catch::Matchers::ContainsSubstring;

namespace {

Mat<double> mat2(double a, double b, double c, double d) {
    Mat<double> m(2, 0.0);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

} // namespace

TEST_CASE("squaring defect h vanishes for abelian sources") {
    const auto g = linear_hom(mat2(2.0, -1.0, 0.5, 3.0));
    const Vec<double> x{0.004, -0.003};
    CHECK(g.target.norm_of(defect_h(g, x)) == 0.0);
    CHECK(g.target.norm_of(defect_h(g, g.source.zero())) == 0.0);
}

TEST_CASE("squaring defect h of the Heisenberg scaling map: closed form") {
    const double r = 2.0, s = 3.0;
    const auto g = heisenberg_scale_hom(r, s);
    // (x/2)^{-2} * x = (0, 0, -ab/4) in the Heisenberg chart, so
    // h(x) = (0, 0, -rs ab/4)
    const Vec<double> x{0.01, -0.008, 0.002};
    const auto h = defect_h(g, x);
    CHECK(h[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(h[1] == Catch::Approx(0.0).margin(1e-15));
    CHECK(h[2] == Catch::Approx(-r * s * x[0] * x[1] / 4.0).margin(1e-12));
}

TEST_CASE("squaring defect h decays quadratically") {
    const auto g = heisenberg_scale_hom(2.0, 3.0);
    const Vec<double> x{0.01, 0.008, 0.0};
    std::vector<double> lx, ly;
    for (int n = 0; n <= 6; ++n) {
        const auto xs = x.scaled(std::pow(2.0, -n));
        lx.push_back(-double(n));
        ly.push_back(std::log2(g.target.norm_of(defect_h(g, xs))));
    }
    const auto slope = detail::fit_slope(lx, ly);
    REQUIRE(slope.has_value());
    CHECK(*slope >= 2.0 - 0.1);
    // outside the A-ball the defect is not defined
    CHECK_THROWS_AS(defect_h(g, Vec<double>{0.5, 0.5, 0.0}), std::domain_error);
}

TEST_CASE("p-adic squaring defect") {
    const auto lin = padic_linear_hom(Mat<Padic>(1, Padic(cpp_rational(3), 5, 24)), 5, 24);
    const PadicField f5(5, 24);
    CHECK(lin.target.norm_of(defect_h_padic(lin, Vec<Padic>{f5.from_int(125)})) == 0.0);

    const auto pw = padic_power_hom(7, 5, 24);
    for (long v : {125L, 250L, 625L}) {
        const Vec<Padic> x{f5.from_int(v)};
        const double hx = pw.target.norm_of(defect_h_padic(pw, x));
        const double xn = pw.source.norm_of(x);
        CHECK(hx <= xn * xn); // quadratic vanishing at 0
    }
}

TEST_CASE("dyadic partial at n = 0 is g itself") {
    const auto g = det_hom();
    const Vec<double> x{0.002, 0.001, -0.001, 0.0015};
    const auto part = dyadic_partial(g, x, 0);
    CHECK(g.target.norm_of(part.direct - g(x)) == 0.0);
    CHECK(g.target.norm_of(part.series - g(x)) == 0.0);
    CHECK(part.summands.empty());
}

TEST_CASE("dyadic telescoping is exact for linear maps") {
    const auto g = linear_hom(mat2(2.0, -1.0, 0.5, 3.0));
    const Vec<double> x{0.005, -0.004};
    for (int n : {1, 5, 12, 20}) {
        const auto part = dyadic_partial(g, x, n);
        CHECK(g.target.norm_of(part.direct - g(x)) < 1e-14);
        CHECK(g.target.norm_of(part.series - part.direct) < 1e-14);
        for (const auto& s : part.summands) CHECK(g.target.norm_of(s) < 1e-15);
    }
}

TEST_CASE("dyadic telescoping identity on conjugation at depth 20") {
    Mat<double> S = mat2(1.0, 1.0, 0.0, 1.0);
    const auto g = conjugation_hom(S);
    const Vec<double> x{0.002, -0.001, 0.0015, 0.001};
    const auto part = dyadic_partial(g, x, 20);
    CHECK(g.target.norm_of(part.direct - part.series) <= 1e-9);
    CHECK(part.summands.size() == 20);
}

TEST_CASE("dyadic partial argument guards") {
    const auto g = det_hom();
    const Vec<double> x{0.001, 0.0, 0.0, 0.001};
    CHECK_THROWS_AS(dyadic_partial(g, x, -1), std::invalid_argument);
    CHECK_THROWS_AS(dyadic_partial(g, x, 41), std::invalid_argument);
    CHECK_THROWS_AS(dyadic_partial(g, Vec<double>{0.1, 0.0, 0.0, 0.1}, 1), std::domain_error);
}

TEST_CASE("p-adic partial is exactly telescoping") {
    const auto g = padic_power_hom(7, 5, 18);
    const PadicField f5(5, 18);
    const Vec<Padic> x{f5.from_int(125)};
    for (int n : {1, 3, 6}) {
        const auto part = padic_partial(g, x, n);
        CHECK(g.target.norm_of(part.direct - part.series) == 0.0);
    }
    CHECK_THROWS_AS(padic_partial(g, x, 17), std::invalid_argument);
    CHECK_THROWS_AS(padic_partial(g, x, -1), std::invalid_argument);
}

TEST_CASE("lambda limit of a linear map is the map") {
    const auto L = mat2(2.0, -1.0, 0.5, 3.0);
    const auto g = linear_hom(L);
    const Vec<double> x{0.006, -0.002};
    const auto rep = lambda_limit(g, x);
    REQUIRE(rep.converged);
    CHECK(rep.lambda[0] == Catch::Approx(2.0 * x[0] - x[1]).margin(1e-12));
    CHECK(rep.lambda[1] == Catch::Approx(0.5 * x[0] + 3.0 * x[1]).margin(1e-12));
    CHECK(rep.certificate.pass);
    for (const auto& [name, tb] : rep.tail) CHECK(tb.holds);
}

TEST_CASE("lambda limit of det recovers the trace") {
    const auto g = det_hom();
    const Vec<double> x{0.002, 0.001, -0.001, 0.0015};
    const auto rep = lambda_limit(g, x);
    REQUIRE(rep.converged);
    CHECK(rep.lambda[0] == Catch::Approx(x[0] + x[3]).margin(1e-8));
    CHECK(rep.certificate.pass);
    REQUIRE(rep.decay_slope.has_value());
    CHECK(*rep.decay_slope == Catch::Approx(-1.0).margin(0.15));
}

TEST_CASE("lambda limit scales like a derivative on shrunk probes") {
    const auto g = det_hom();
    const Vec<double> x{0.002, 0.001, -0.001, 0.0015};
    const auto full = lambda_limit(g, x);
    const auto half = lambda_limit(g, x.scaled(0.5));
    CHECK(g.target.norm_of(full.lambda - half.lambda.scaled(2.0)) <= 1e-8);
}

TEST_CASE("lambda limit refuses to run without a usable exponent") {
    auto g = det_hom();
    g.alpha = std::nullopt;
    const Vec<double> x{0.001, 0.0, 0.0, 0.001};
    CHECK_THROWS_WITH(lambda_limit(g, x), ContainsSubstring("holder"));
    ExtractionConfig cfg;
    cfg.alpha = 0.4;
    CHECK_THROWS_WITH(lambda_limit(g, x, cfg), ContainsSubstring("bootstrap"));
}

TEST_CASE("lambda limit flags the degenerate zero probe") {
    const auto g = det_hom();
    const auto rep = lambda_limit(g, g.source.zero());
    CHECK(rep.degenerate);
    CHECK(rep.converged);
    CHECK(g.target.norm_of(rep.lambda) == 0.0);
}

TEST_CASE("additivity defect vanishes in trivial cases") {
    const auto lin = linear_hom(mat2(2.0, -1.0, 0.5, 3.0));
    const Vec<double> x{0.0004, -0.0002};
    const Vec<double> y{0.0001, 0.0003};
    const auto d = additivity_defect(lin, x, y, 4);
    CHECK(lin.target.norm_of(d.direct) < 1e-12);
    CHECK(lin.target.norm_of(d.via_rn) < 1e-12);
    const auto gdet = det_hom();
    const Vec<double> xd{0.0004, 0.0002, -0.0001, 0.0003};
    const auto dz = additivity_defect(gdet, xd, gdet.source.zero(), 3);
    CHECK(gdet.target.norm_of(dz.direct) < 1e-13);
}

TEST_CASE("both routes to the additivity defect agree, slope -1") {
    const auto g = det_hom();
    const Vec<double> x{0.0004, 0.0002, -0.0001, 0.0003};
    const Vec<double> y{-0.0002, 0.0001, 0.0003, 0.0004}; // nonzero trace
    std::vector<double> ns, ls;
    for (int n = 1; n <= 8; ++n) {
        const auto d = additivity_defect(g, x, y, n);
        CHECK(g.target.norm_of(d.direct - d.via_rn) <= 1e-10);
        const double v = g.target.norm_of(d.direct);
        if (v > 1e-13) {
            ns.push_back(double(n));
            ls.push_back(std::log2(v));
        }
    }
    const auto slope = detail::fit_slope(ns, ls);
    REQUIRE(slope.has_value());
    CHECK(*slope == Catch::Approx(-1.0).margin(0.15));
}

TEST_CASE("linearize recovers the matrix of a linear map") {
    const auto L = mat2(2.0, -1.0, 0.5, 3.0);
    const auto g = linear_hom(L);
    const auto cand = linearize(g);
    REQUIRE(cand.columns.size() == 2);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(cand.columns[j][i] == Catch::Approx(L(i, j)).margin(1e-9));
    CHECK(cand.validated);
}

TEST_CASE("linearize of conjugation is Ad(S)") {
    const auto S = mat2(1.0, 1.0, 0.0, 1.0);
    const auto g = conjugation_hom(S);
    const auto cand = linearize(g);
    const auto ad = adjoint_matrix(S);
    REQUIRE(cand.columns.size() == 4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(cand.columns[j][i] == Catch::Approx(ad(i, j)).margin(1e-6));
    CHECK(cand.validated);
    CHECK(cand.worst_residual <= 1e-6);
}

TEST_CASE("p-adic linearize recovers the exact matrix") {
    const PadicField f5(5, 18);
    Mat<Padic> L(1, f5.from_int(7));
    const auto g = padic_linear_hom(L, 5, 18);
    const auto cand = linearize_padic(g);
    REQUIRE(cand.columns.size() == 1);
    CHECK(cand.columns[0][0] == f5.from_int(7));
    CHECK(cand.validated);
}

TEST_CASE("residual constant from the geometric series") {
    const auto g = det_hom();
    const auto cand = linearize(g);
    const Vec<double> x{0.002, 0.001, -0.001, 0.0015};
    // c(a) = 1 / (1 - 2^{-(2a-1)})
    CHECK(total_diff_residual(g, cand, {x}, 1.0).c == Catch::Approx(2.0).margin(1e-12));
    CHECK(total_diff_residual(g, cand, {x}, 0.75).c ==
          Catch::Approx(3.4142135623730950).margin(1e-12));
}

TEST_CASE("total differentiability residual: linear maps have none") {
    const auto g = linear_hom(mat2(2.0, -1.0, 0.5, 3.0));
    const auto cand = linearize(g);
    const auto rep = total_diff_residual(g, cand, {Vec<double>{0.005, -0.003}}, 1.0);
    CHECK(rep.bound_holds);
    for (const auto& row : rep.rows) CHECK(row.lhs < 1e-13);
}

TEST_CASE("total differentiability residual of det: bounded, quadratic") {
    const auto g = det_hom();
    const auto cand = linearize(g);
    const std::vector<Vec<double>> probes = {Vec<double>{0.002, 0.001, -0.001, 0.0015},
                                             Vec<double>{-0.001, 0.002, 0.001, 0.002}};
    const auto rep = total_diff_residual(g, cand, probes, 1.0);
    CHECK(rep.bound_holds);
    REQUIRE(rep.slope.has_value());
    CHECK(rep.slope_ok);
    CHECK(*rep.slope >= 2.0 - 0.1);
}

TEST_CASE("one-parameter extraction: linear curves are trivial") {
    const auto target = abelian_group(RealField{}, 2, 100.0);
    const auto xi = [](double t) { return Vec<double>{2.0 * t, -t}; };
    for (int n : {0, 1, 10}) {
        const auto r = one_parameter_extract(xi, target, n);
        CHECK(target.norm_of(r.lhs - xi(1.0)) < 1e-12);
        CHECK(target.norm_of(r.rhs - xi(1.0)) < 1e-12);
    }
}

TEST_CASE("one-parameter extraction of an exponential curve") {
    const auto target = multiplicative_group(0.9);
    const double eps = 0.05;
    const auto xi = [eps](double t) { return Vec<double>{std::expm1(eps * t)}; };
    const auto at0 = one_parameter_extract(xi, target, 0);
    CHECK(at0.lhs[0] == Catch::Approx(xi(1.0)[0]));
    CHECK(at0.rhs[0] == Catch::Approx(xi(1.0)[0]));
    const auto deep = one_parameter_extract(xi, target, 20);
    // both sides agree and converge to the curve's derivative at 0
    CHECK(deep.lhs[0] == Catch::Approx(deep.rhs[0]).margin(1e-9));
    CHECK(deep.lhs[0] == Catch::Approx(eps).margin(1e-8));
    CHECK_THROWS_AS(one_parameter_extract(xi, target, -1), std::invalid_argument);
}

TEST_CASE("extraction is robust to small perturbations of the evaluator") {
    const auto S = mat2(1.0, 1.0, 0.0, 1.0);
    const auto clean = conjugation_hom(S);
    auto noisy = conjugation_hom(S);
    noisy.noise = NoiseModel{1e-6, 2.0};
    const Vec<double> x{0.002, -0.001, 0.0015, 0.001};
    CHECK(clean.target.norm_of(noisy(x) - clean(x)) > 0.0); // noise is live
    const auto cl = linearize(clean);
    const auto nl = linearize(noisy);
    double shift = 0.0;
    for (std::size_t j = 0; j < cl.columns.size(); ++j)
        shift = std::max(shift, clean.target.norm_of(nl.columns[j] - cl.columns[j]));
    // frozen regression bound: measured shift is ~1e-9 for eps = 1e-6
    CHECK(shift <= 1e-7);
}

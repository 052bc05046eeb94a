#include "catch_amalgamated.hpp"

#include "lgx/builtin_groups.hpp"
#include "lgx/taylor.hpp"

using namespace lgx;

TEST_CASE("Taylor coefficients of a quadratic scalar map") {
    const RealField f;
    // f(x) = x^2: f(x+ty) - f(x) = (2xy) t + (y^2) t^2
    const auto sq = [](const Vec<double>& v) { return Vec<double>{v[0] * v[0]}; };
    const auto exp = taylor_coefficients<RealField>(f, sq, Vec<double>{1.5}, Vec<double>{2.0}, 2,
                                                    {0.1, 0.05, 0.025});
    CHECK(exp.coeffs[0][0] == Catch::Approx(2.0 * 1.5 * 2.0).margin(1e-9));
    CHECK(exp.coeffs[1][0] == Catch::Approx(4.0).margin(1e-9));
    // quadratic map: the order-2 remainder vanishes identically
    CHECK(exp.remainder(0.01)[0] == Catch::Approx(0.0).margin(1e-9));
    CHECK(exp.remainder(0.0)[0] == 0.0);
}

TEST_CASE("Taylor coefficients of a linear map are the map itself") {
    const RealField f;
    const auto lin = [](const Vec<double>& v) { return Vec<double>{3.0 * v[0] - v[1], v[1]}; };
    const auto exp = taylor_coefficients<RealField>(f, lin, Vec<double>{0.2, 0.1},
                                                    Vec<double>{1.0, -1.0}, 1, {0.5});
    CHECK(exp.coeffs[0][0] == Catch::Approx(4.0).margin(1e-12));
    CHECK(exp.coeffs[0][1] == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("Taylor coefficient extraction validates its samples") {
    const RealField f;
    const auto id = [](const Vec<double>& v) { return v; };
    const Vec<double> x{0.0};
    const Vec<double> y{1.0};
    CHECK_THROWS_AS(taylor_coefficients<RealField>(f, id, x, y, 0, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(taylor_coefficients<RealField>(f, id, x, y, 2, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(taylor_coefficients<RealField>(f, id, x, y, 2, {0.1, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(taylor_coefficients<RealField>(f, id, x, y, 2, {0.1, 0.1}),
                    std::invalid_argument);
}

TEST_CASE("exact p-adic Taylor coefficients") {
    const PadicField f5(5, 24);
    // f(x) = x^2 over Q_5, exact Vandermonde solve
    const auto sq = [](const Vec<Padic>& v) { return Vec<Padic>{v[0] * v[0]}; };
    const Vec<Padic> x{f5.from_int(3)};
    const Vec<Padic> y{f5.from_int(2)};
    const auto exp = taylor_coefficients<PadicField>(
        f5, sq, x, y, 2, {f5.from_int(5), f5.from_int(25)});
    CHECK(exp.coeffs[0][0] == f5.from_int(12)); // 2xy
    CHECK(exp.coeffs[1][0] == f5.from_int(4));  // y^2
}

TEST_CASE("R vanishes on abelian groups") {
    const auto gr = abelian_group(RealField{}, 2, 1.0);
    const Vec<double> x{0.01, -0.02};
    const Vec<double> y{0.005, 0.01};
    CHECK(gr.norm_of(defect_R(gr, x, y)) == 0.0);
    const PadicField f5(5, 24);
    const auto gp = abelian_group(f5, 1, 1.5);
    const Vec<Padic> xp{f5.from_int(25)};
    const Vec<Padic> yp{f5.from_int(50)};
    CHECK(gp.norm_of(defect_R(gp, xp, yp)) == 0.0);
}

TEST_CASE("R on the multiplicative group against the closed form") {
    // sigma(x, y) = x*x*y in the chart t -> t-1 is (1+x)^2(1+y) - 1,
    // so R(x, y) = (1+x)^2(1+y) - 1 - 2x - y
    const auto g = multiplicative_group(0.9);
    for (double x : {0.01, -0.02, 0.04}) {
        for (double y : {0.015, -0.01}) {
            const auto r = defect_R(g, Vec<double>{x}, Vec<double>{y});
            const double want = (1.0 + x) * (1.0 + x) * (1.0 + y) - 1.0 - 2.0 * x - y;
            CHECK(r[0] == Catch::Approx(want).margin(1e-15));
        }
    }
}

TEST_CASE("D on the Heisenberg group against the closed form") {
    // tau(x,y,z) - (x+y+z) has only a central component: ax by + ax bz + ay bz
    const auto g = heisenberg_group(1.0);
    const Vec<double> x{0.01, 0.02, 0.003};
    const Vec<double> y{-0.015, 0.01, 0.0};
    const Vec<double> z{0.02, -0.005, 0.001};
    const auto d = defect_D(g, x, y, z);
    CHECK(d[0] == Catch::Approx(0.0).margin(1e-16));
    CHECK(d[1] == Catch::Approx(0.0).margin(1e-16));
    CHECK(d[2] == Catch::Approx(x[0] * y[1] + x[0] * z[1] + y[0] * z[1]).margin(1e-15));
}

TEST_CASE("quadratic remainder bound certified for a smooth map") {
    const RealField f;
    // componentwise sine with its exact derivative: |R_1| <= |y|^2 / 2
    const auto fs = [](const Vec<double>& v) {
        Vec<double> r = v;
        for (auto& c : r.c) c = std::sin(c);
        return r;
    };
    const auto dfs = [](const Vec<double>& x, const Vec<double>& y) {
        Vec<double> r = y;
        for (std::size_t i = 0; i < r.dim(); ++i) r[i] = std::cos(x[i]) * y[i];
        return r;
    };
    const auto fam = default_family<RealField>(2);
    const auto rep = quadratic_bound_check<RealField>(f, fs, dfs, Vec<double>{0.0, 0.0},
                                                      max_abs_seminorm<RealField>(), 1.0, fam, 10.0);
    CHECK(rep.pass);
    CHECK(rep.worst_ratio <= 1.0);
}

TEST_CASE("quadratic remainder bound fails for a sub-quadratic remainder") {
    const RealField f;
    // f(y) = ||y||^{3/2} with claimed derivative 0: remainder beats C y^2
    const auto fs = [](const Vec<double>& v) {
        return Vec<double>{std::pow(std::fabs(v[0]), 1.5)};
    };
    const auto dfs = [](const Vec<double>&, const Vec<double>&) { return Vec<double>{0.0}; };
    const auto fam = default_family<RealField>(1);
    const auto rep = quadratic_bound_check<RealField>(f, fs, dfs, Vec<double>{0.0},
                                                      max_abs_seminorm<RealField>(), 1.0, fam, 10.0);
    CHECK_FALSE(rep.pass);
    CHECK_THROWS_AS(quadratic_bound_check<RealField>(f, fs, dfs, Vec<double>{0.0},
                                                     max_abs_seminorm<RealField>(), 0.0, fam, 10.0),
                    std::invalid_argument);
}

#include "catch_amalgamated.hpp"

#include "lgx/differentiability.hpp"
#include "lgx/extraction.hpp"
#include "lgx/homomorphism.hpp"

using namespace lgx;

namespace {

const auto square = [](const Vec<double>& v) { return Vec<double>{v[0] * v[0]}; };

} // namespace

TEST_CASE("difference quotient of a quadratic map") {
    const RealField field;
    // (f(x + ty) - f(x)) / t = 2xy + t y^2
    const std::function<Vec<double>(const Vec<double>&)> f = square;
    const Vec<double> x{1.5};
    const Vec<double> y{2.0};
    const auto q = difference_quotient<RealField>(field, f, x, y, 0.25);
    CHECK(q[0] == Catch::Approx(2.0 * 1.5 * 2.0 + 0.25 * 4.0).margin(1e-12));
}

TEST_CASE("difference quotient of a linear map is t-independent") {
    const RealField field;
    const std::function<Vec<double>(const Vec<double>&)> f = [](const Vec<double>& v) {
        return Vec<double>{3.0 * v[0] - v[1], v[1]};
    };
    const Vec<double> x{0.2, 0.4};
    const Vec<double> y{1.0, -1.0};
    for (double t : {1.0, 0.1, -0.01}) {
        const auto q = difference_quotient<RealField>(field, f, x, y, t);
        CHECK(q[0] == Catch::Approx(4.0).margin(1e-10));
        CHECK(q[1] == Catch::Approx(-1.0).margin(1e-10));
    }
}

TEST_CASE("difference quotient at t = 0 needs the derivative") {
    const RealField field;
    const std::function<Vec<double>(const Vec<double>&)> f = square;
    const Vec<double> x{1.0};
    const Vec<double> y{1.0};
    CHECK_THROWS_AS(difference_quotient<RealField>(field, f, x, y, 0.0), std::invalid_argument);
    const std::function<Vec<double>(const Vec<double>&, const Vec<double>&)> df =
        [](const Vec<double>& a, const Vec<double>& b) { return Vec<double>{2.0 * a[0] * b[0]}; };
    const auto q = difference_quotient<RealField>(field, f, x, y, 0.0, &df);
    CHECK(q[0] == Catch::Approx(2.0));
}

TEST_CASE("difference quotient rescaling identity") {
    const RealField field;
    const std::function<Vec<double>(const Vec<double>&)> f = [](const Vec<double>& v) {
        return Vec<double>{std::sin(v[0]) + v[1] * v[1], v[0] * v[1]};
    };
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        const Vec<double> x{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        const Vec<double> y{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double t = rng.uniform(0.01, 0.5);
        const double s = rng.uniform(0.01, 0.5);
        // f^{[1]}(x, t y, s) = t f^{[1]}(x, y, s t)
        const auto lhs = difference_quotient<RealField>(field, f, x, y.scaled(t), s);
        const auto rhs = difference_quotient<RealField>(field, f, x, y, s * t).scaled(t);
        CHECK(max_abs_seminorm<RealField>().eval(field, lhs - rhs) < 1e-12);
    }
}

TEST_CASE("tangency: quadratic remainders are tangent to zero") {
    const auto p = max_abs_seminorm<RealField>();
    const auto h = [](const Vec<double>& y) {
        const double n = std::max(std::fabs(y[0]), std::fabs(y[1]));
        return Vec<double>{n * n, 0.5 * n * n};
    };
    const auto rep = tangency_check(h, 2, p, p, {0.5, 0.1, 0.01});
    CHECK(rep.pass);
    for (const auto& row : rep.rows) {
        CHECK(row.pass);
        CHECK(row.delta >= row.eps / 2.0); // delta(eps) tracks eps for ||y||^2
    }
}

TEST_CASE("tangency: first-order remainders fail for small eps") {
    const auto p = max_abs_seminorm<RealField>();
    const auto h = [](const Vec<double>& y) { return Vec<double>{std::fabs(y[0])}; };
    const auto rep = tangency_check(h, 1, p, p, {2.0, 0.5});
    CHECK(rep.rows[0].pass);                 // eps = 2 beats the unit ratio
    CHECK(rep.rows[0].delta == Catch::Approx(1.0));
    CHECK_FALSE(rep.rows[1].pass);           // eps = 0.5 never certified
    CHECK_FALSE(rep.pass);
    CHECK_THROWS_AS(tangency_check(h, 1, p, p, {}), std::invalid_argument);
    CHECK_THROWS_AS(tangency_check(h, 1, p, p, {-1.0}), std::invalid_argument);
}

TEST_CASE("tangency: the zero remainder certifies at the full radius") {
    const auto p = max_abs_seminorm<RealField>();
    const auto h = [](const Vec<double>& y) { return Vec<double>{0.0 * y[0]}; };
    const auto rep = tangency_check(h, 1, p, p, {1e-6});
    CHECK(rep.pass);
    CHECK(rep.rows[0].delta == Catch::Approx(1.0));
}

TEST_CASE("feeble differentiability of smooth scalar maps") {
    const auto q = max_abs_seminorm<RealField>();
    const std::function<Vec<double>(const Vec<double>&)> lin = [](const Vec<double>& v) {
        return Vec<double>{3.0 * v[0]};
    };
    const auto dlin = [](const Vec<double>&, const Vec<double>& y) {
        return Vec<double>{3.0 * y[0]};
    };
    CHECK(feeble_check(lin, dlin, Vec<double>{0.2}, q).pass);

    const std::function<Vec<double>(const Vec<double>&)> sq = square;
    const auto dsq = [](const Vec<double>& x, const Vec<double>& y) {
        return Vec<double>{2.0 * x[0] * y[0]};
    };
    CHECK(feeble_check(sq, dsq, Vec<double>{1.0}, q).pass);
}

TEST_CASE("feeble differentiability fails for |x| at 0 with candidate 0") {
    const auto q = max_abs_seminorm<RealField>();
    const std::function<Vec<double>(const Vec<double>&)> f = [](const Vec<double>& v) {
        return Vec<double>{std::fabs(v[0])};
    };
    const auto zero = [](const Vec<double>&, const Vec<double>&) { return Vec<double>{0.0}; };
    const auto rep = feeble_check(f, zero, Vec<double>{0.0}, q);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.rows.empty());
}

TEST_CASE("finite-difference derivative is Richardson-accurate") {
    const auto df = fd_derivative([](const Vec<double>& v) { return Vec<double>{std::sin(v[0])}; });
    const auto d = df(Vec<double>{0.7}, Vec<double>{1.0});
    CHECK(d[0] == Catch::Approx(std::cos(0.7)).margin(1e-10));
}

TEST_CASE("chain rule for linear maps is exact") {
    const auto q = max_abs_seminorm<RealField>();
    const auto f = [](const Vec<double>& v) { return Vec<double>{2.0 * v[0]}; };
    const auto df = [](const Vec<double>&, const Vec<double>& y) { return Vec<double>{2.0 * y[0]}; };
    const auto g = [](const Vec<double>& v) { return Vec<double>{-3.0 * v[0]}; };
    const auto dg = [](const Vec<double>&, const Vec<double>& y) {
        return Vec<double>{-3.0 * y[0]};
    };
    const auto rep = chain_rule_test(f, df, g, dg, {{Vec<double>{0.3}, Vec<double>{1.0}}}, q, 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("chain rule for cube-then-square at 1") {
    const auto q = max_abs_seminorm<RealField>();
    const auto f = [](const Vec<double>& v) { return Vec<double>{v[0] * v[0] * v[0]}; };
    const auto df = [](const Vec<double>& x, const Vec<double>& y) {
        return Vec<double>{3.0 * x[0] * x[0] * y[0]};
    };
    const auto g = [](const Vec<double>& v) { return Vec<double>{v[0] * v[0]}; };
    const auto dg = [](const Vec<double>& x, const Vec<double>& y) {
        return Vec<double>{2.0 * x[0] * y[0]};
    };
    // d(x^6)/dx at 1 along y = 1 is 6
    const auto rep = chain_rule_test(f, df, g, dg, {{Vec<double>{1.0}, Vec<double>{1.0}}}, q, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.worst_residual <= 1e-6);
}

TEST_CASE("extracted derivatives are feeble derivatives at the identity") {
    const auto q = max_abs_seminorm<RealField>();
    for (const auto& g : {det_hom(), heisenberg_exp_hom(1.0)}) {
        const auto cand = linearize(g);
        const RealField field;
        const std::function<Vec<double>(const Vec<double>&)> f = [&g](const Vec<double>& x) {
            return g(x);
        };
        const auto df = [&cand, &field](const Vec<double>&, const Vec<double>& y) {
            return cand.apply(field, y);
        };
        const auto rep = feeble_check(f, df, g.source.zero(), q, g.source.radii.A / 4.0, 2, 12, 1e-9);
        CHECK(rep.pass);
    }
}

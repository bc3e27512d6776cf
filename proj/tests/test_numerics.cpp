#include <doctest.h>

#include <cmath>
#include <random>

#include "bnkit/numerics.hpp"

using namespace bnkit;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    // order n is exact through degree 2n-1
    for (int n : {2, 4, 8}) {
        GaussRule rule = gauss_legendre(n, 0.0, 2.0);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                sum += rule.weights[i] * std::pow(rule.nodes[i], deg);
            const double exact = std::pow(2.0, deg + 1) / (deg + 1);
            CHECK(std::abs(sum - exact) <= 1e-13 * exact);
        }
    }
}

TEST_CASE("pairwise sum matches plain sum") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(1000);
    long double ref = 0.0;
    for (auto& x : v) {
        x = u(rng);
        ref += x;
    }
    CHECK(std::abs(pairwise_sum(v) - static_cast<double>(ref)) < 1e-12);
}

TEST_CASE("sine integral against quadrature oracle") {
    // Independent oracle: adaptive quadrature of sin(t)/t on [0, x].
    for (double x : {0.3, 1.0, 2.0, 5.0, 12.0, 40.0}) {
        const double oracle = adaptive_gauss_kronrod(
            [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, x, 1e-13);
        CHECK(sine_integral(x) == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(sine_integral(-x) == doctest::Approx(-oracle).epsilon(1e-12));
    }
    // Large-argument sanity: Si(x) -> pi/2.
    CHECK(std::abs(sine_integral(1e8) - kPi / 2) < 1e-7);
}

TEST_CASE("adaptive gauss-kronrod on a peaked integrand") {
    // int_0^1 1/sqrt(x+1e-6) dx
    const double exact = 2.0 * (std::sqrt(1.0 + 1e-6) - std::sqrt(1e-6));
    const double got = adaptive_gauss_kronrod(
        [](double x) { return 1.0 / std::sqrt(x + 1e-6); }, 0.0, 1.0, 1e-10);
    CHECK(got == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("adaptive gauss-kronrod reports unreachable tolerance") {
    CHECK_THROWS_AS(adaptive_gauss_kronrod([](double x) { return std::cos(1e7 * x); }, 0.0, 1.0,
                                           1e-16, 10),
                    QuadratureToleranceError);
}

TEST_CASE("piecewise chebyshev interpolates smooth functions") {
    PiecewiseChebyshev cheb([](double x, double* out) { out[0] = std::exp(x) * std::sin(3 * x); },
                            -1.0, 1.0, 8, 8, 1);
    for (double x = -1.0; x <= 1.0; x += 0.037) {
        CHECK(std::abs(cheb.eval1(x) - std::exp(x) * std::sin(3 * x)) < 1e-10);
    }
}

TEST_CASE("line fit recovers exact slope") {
    std::vector<double> x{1, 2, 3, 4, 5}, y;
    for (double xi : x) y.push_back(-2.0 * xi + 0.5);
    LineFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(-2.0));
    CHECK(fit.intercept == doctest::Approx(0.5));
    CHECK(fit.r2 == doctest::Approx(1.0));
}

TEST_CASE("loglog fit skips nonpositive data and flags degenerate") {
    std::vector<double> x{1, 10, 100, 1000}, y{1.0, 0.1, 0.01, 0.001};
    LineFit fit = fit_loglog(x, y);
    CHECK(!fit.degenerate);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    std::vector<double> y0{0.0, 0.0, 0.0, 0.0};
    CHECK(fit_loglog(x, y0).degenerate);
}

TEST_SUITE_END();

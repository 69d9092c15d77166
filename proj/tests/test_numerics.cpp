#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "subphase/eigensystem.hpp"
#include "subphase/integrate.hpp"
#include "subphase/verification.hpp"

using namespace subphase;

namespace {
constexpr double kPi = std::numbers::pi;

double eigen_residual(const ComplexMatrix& m, const EigenSystem& sys) {
    double worst = 0.0;
    for (int n = 0; n < m.dim(); ++n) {
        StateVector r = apply(m, sys.vectors[n]);
        double s = 0.0;
        for (int i = 0; i < m.dim(); ++i) s += std::norm(r[i] - sys.values[n] * sys.vectors[n][i]);
        worst = std::max(worst, std::sqrt(s));
    }
    return worst;
}
} // namespace

TEST_CASE("eigensystem of a diagonal matrix") {
    ComplexMatrix m(2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    const EigenSystem sys = hermitian_eigensystem(m);
    CHECK(sys.values[0] == doctest::Approx(-1.0));
    CHECK(sys.values[1] == doctest::Approx(1.0));
    CHECK(sys.vectors[0][0].real() == doctest::Approx(1.0));
    CHECK(std::abs(sys.vectors[0][1]) == doctest::Approx(0.0));
    CHECK(sys.vectors[1][1].real() == doctest::Approx(1.0));
}

TEST_CASE("eigensystem of sigma_x") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    const EigenSystem sys = hermitian_eigensystem(m);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(sys.values[0] == doctest::Approx(-1.0));
    CHECK(sys.values[1] == doctest::Approx(1.0));
    // gauge: first entry real positive
    CHECK(sys.vectors[0][0].real() == doctest::Approx(r));
    CHECK(sys.vectors[0][1].real() == doctest::Approx(-r));
    CHECK(sys.vectors[1][0].real() == doctest::Approx(r));
    CHECK(sys.vectors[1][1].real() == doctest::Approx(r));
}

TEST_CASE("seeded random Hermitian draws: residual and orthonormality") {
    for (unsigned seed : {1u, 2u, 3u, 7u}) {
        for (int dim : {2, 4, 8, 16, 32}) {
            const ComplexMatrix m = verification::random_hermitian(dim, seed, 1.0);
            const EigenSystem sys = hermitian_eigensystem(m);
            CHECK(eigen_residual(m, sys) <= 1e-10 * m.maxnorm());
            for (int a = 0; a < dim; ++a) {
                for (int b = 0; b < dim; ++b) {
                    const cplx ip = inner(sys.vectors[a], sys.vectors[b]);
                    CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
                }
            }
            for (int n = 1; n < dim; ++n) CHECK(sys.values[n] >= sys.values[n - 1]);
        }
    }
}

TEST_CASE("non-Hermitian input is a convention violation") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 2.0;
    CHECK_THROWS_AS(hermitian_eigensystem(m), ConventionError);
}

TEST_CASE("nearly degenerate pairs still meet the residual bound") {
    ComplexMatrix tight(4);
    tight(0, 0) = 1.0;
    tight(1, 1) = 1.0 + 1e-7;
    tight(2, 2) = -2.0;
    tight(3, 3) = 3.0;
    tight(0, 1) = cplx(1e-8, 2e-8);
    tight(1, 0) = std::conj(tight(0, 1));
    const EigenSystem sys = hermitian_eigensystem(tight);
    double worst = 0.0;
    for (int n = 0; n < 4; ++n) {
        StateVector r = apply(tight, sys.vectors[n]);
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += std::norm(r[i] - sys.values[n] * sys.vectors[n][i]);
        worst = std::max(worst, std::sqrt(s));
    }
    CHECK(worst <= 1e-10 * tight.maxnorm());
}

TEST_CASE("degenerate clusters are reported") {
    ComplexMatrix m(3);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0 + 1e-12;
    m(2, 2) = 5.0;
    const EigenSystem sys = hermitian_eigensystem(m);
    REQUIRE(sys.degenerate_clusters.size() == 1);
    CHECK(sys.degenerate_clusters[0].first == 0);
    CHECK(sys.degenerate_clusters[0].second == 1);
}

TEST_CASE("quadrature: constant integrand") {
    const TimeGrid grid(0.0, 2.0, 10);
    std::vector<double> ones(grid.n_samples(), 1.0);
    const std::vector<double> acc = cumulative_trapezoid(grid, ones);
    CHECK(acc.front() == 0.0);
    CHECK(acc.back() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadrature: sin on [0, pi]") {
    const TimeGrid grid(0.0, kPi, 2000);
    std::vector<double> f(grid.n_samples());
    for (int j = 0; j < grid.n_samples(); ++j) f[j] = std::sin(grid.time(j));
    CHECK(std::abs(trapezoid(grid, f) - 2.0) < 1e-6);
}

TEST_CASE("quadrature: shape error and linearity") {
    const TimeGrid grid(0.0, 1.0, 10);
    std::vector<double> wrong(5, 1.0);
    CHECK_THROWS_AS(cumulative_trapezoid(grid, wrong), ShapeError);

    std::mt19937 eng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> f(grid.n_samples()), g(grid.n_samples()), combo(grid.n_samples());
    const double a = 0.7, b = -1.3;
    for (int j = 0; j < grid.n_samples(); ++j) {
        f[j] = dist(eng);
        g[j] = dist(eng);
        combo[j] = a * f[j] + b * g[j];
    }
    const auto accf = cumulative_trapezoid(grid, f);
    const auto accg = cumulative_trapezoid(grid, g);
    const auto accc = cumulative_trapezoid(grid, combo);
    for (int j = 0; j < grid.n_samples(); ++j) {
        CHECK(std::abs(accc[j] - (a * accf[j] + b * accg[j])) < 1e-12);
    }
}

TEST_CASE("rk4: zero field leaves the state unchanged") {
    auto f = [](double, const std::vector<cplx>& y) {
        return std::vector<cplx>(y.size(), cplx(0.0));
    };
    const std::vector<cplx> y{cplx(0.3, 0.4), cplx(-0.1, 0.9)};
    const std::vector<cplx> out = rk4_step(f, 0.0, y, 0.1);
    CHECK(out[0] == y[0]);
    CHECK(out[1] == y[1]);
}

TEST_CASE("rk4: exponential rotation reaches -1 at t = pi") {
    auto f = [](double, const std::vector<cplx>& y) {
        return std::vector<cplx>{cplx(0.0, -1.0) * y[0]};
    };
    std::vector<cplx> y{cplx(1.0)};
    const int n = 1000;
    const double h = kPi / n;
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
        y = rk4_step(f, t, y, h);
        t += h;
    }
    CHECK(std::abs(y[0] - cplx(-1.0)) < 1e-9);
}

TEST_CASE("rk4: halving the step cuts the error about 16x") {
    auto run = [](int n) {
        auto f = [](double, const std::vector<cplx>& y) {
            return std::vector<cplx>{cplx(0.0, -1.0) * y[0]};
        };
        std::vector<cplx> y{cplx(1.0)};
        const double h = kPi / n;
        double t = 0.0;
        for (int i = 0; i < n; ++i) {
            y = rk4_step(f, t, y, h);
            t += h;
        }
        return std::abs(y[0] - cplx(-1.0));
    };
    const double ratio = run(500) / run(1000);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("rk4: non-finite derivative raises a numeric error") {
    auto f = [](double, const std::vector<cplx>& y) {
        return std::vector<cplx>(y.size(), cplx(std::nan(""), 0.0));
    };
    const std::vector<cplx> y{cplx(1.0)};
    CHECK_THROWS_AS(rk4_step(f, 0.0, y, 0.1), NumericError);
    CHECK_THROWS_AS(rk4_step(f, 0.0, y, -0.1), ValidationError);
}

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 10), ValidationError);
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), ValidationError);
    const TimeGrid g(0.0, 1.0, 4);
    CHECK(g.index_of(0.5) == 2);
    CHECK_THROWS_AS(g.index_of(0.6), RangeError);
}

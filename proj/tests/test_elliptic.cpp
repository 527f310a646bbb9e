#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jastrow/elliptic.hpp"
#include "jastrow/rng.hpp"
#include "jastrow/tolerances.hpp"
#include "support/oracles.hpp"

using namespace jastrow;

namespace {
const LatticeData kLat41 = lattice_from_invariants(4.0, 1.0);
const LatticeData kSquare = lattice_from_periods(1.0, 0.5);  // the l=1, Im w3=1/2 lattice
}

TEST_CASE("lattice_from_invariants(4,1) matches the period-integral oracle") {
    // frozen from the quadrature oracle below
    CHECK(kLat41.l == doctest::Approx(2.45138938198679).epsilon(1e-13));
    CHECK(kLat41.im_omega3 == doctest::Approx(1.49672932311598).epsilon(1e-13));
    CHECK(kLat41.eta1 == doctest::Approx(0.6635152894398382).epsilon(1e-13));

    CHECK(std::abs(oracles::real_period_integral(4.0, 1.0) - kLat41.l) < 1e-12);
    CHECK(std::abs(oracles::imag_halfperiod_integral(4.0, 1.0) - kLat41.im_omega3) < 1e-12);
    // eta1 two independent ways: lattice row sums and the Laurent zeta at l/2
    CHECK(std::abs(oracles::eta1_lattice_sum(kLat41.l, kLat41.im_omega3) - kLat41.eta1) < 1e-12);
    CHECK(std::abs(oracles::zeta_laurent(0.5 * kLat41.l, 4.0, 1.0) - kLat41.eta1) < 1e-12);
}

TEST_CASE("degenerate rational limit: g2, g3 -> 0+ opens the period") {
    const auto lat = lattice_from_invariants(1e-8, 0.0);
    CHECK(lat.l > 300.0);
    CHECK(lattice_from_invariants(1e-10, 0.0).l > lat.l);
    // zeta(x; 0, 0) = 1/x in the limit
    CHECK(std::abs(zeta(0.4, lat) - 1.0 / 0.4) < 1e-8);
}

TEST_CASE("invariants domain: discriminant must be strictly positive") {
    CHECK_THROWS_AS(lattice_from_invariants(1.0, 1.0), std::domain_error);
    // the boundary g2^3 = 27 g3^2 is rejected too
    CHECK_THROWS_AS(lattice_from_invariants(3.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lattice_from_periods(-1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(lattice_from_periods(1.0, 0.0), std::domain_error);
}

TEST_CASE("round trip invariants -> periods -> invariants") {
    const auto back = lattice_from_periods(kLat41.l, kLat41.im_omega3);
    CHECK(back.g2 == doctest::Approx(4.0).epsilon(tol::lattice_round_trip));
    CHECK(back.g3 == doctest::Approx(1.0).epsilon(tol::lattice_round_trip));
    CHECK(back.eta1 == doctest::Approx(kLat41.eta1).epsilon(tol::eta1_self_consistency));
}

TEST_CASE("lattice_from_periods(1, 1/2) matches the Eisenstein lattice sums") {
    CHECK(kSquare.g2 ==
          doctest::Approx(oracles::g2_lattice_sum(1.0, 0.5)).epsilon(1e-12));
    CHECK(std::abs(kSquare.g3 - oracles::g3_lattice_sum(1.0, 0.5)) < 1e-11);
    // frozen: the square lattice has g3 = 0 and eta1 = pi/2 exactly
    CHECK(kSquare.g2 == doctest::Approx(189.072720129234).epsilon(1e-13));
    CHECK(std::abs(kSquare.g3) < 1e-11);
    CHECK(kSquare.eta1 == doctest::Approx(0.5 * pi).epsilon(1e-14));
}

TEST_CASE("homogeneity: scaling both periods by mu") {
    const double mu = 3.0;
    const auto a = lattice_from_periods(1.0, 0.5);
    const auto b = lattice_from_periods(mu, mu * 0.5);
    CHECK(a.g2 / b.g2 == doctest::Approx(std::pow(mu, 4)).epsilon(tol::homogeneity_scaling));
    CHECK(a.g3 == doctest::Approx(b.g3 * std::pow(mu, 6)).epsilon(1e-9));  // g3 ~ 0 here
    CHECK(a.eta1 / b.eta1 == doctest::Approx(mu).epsilon(tol::homogeneity_scaling));
    // wp(mu x | mu lattice) = mu^-2 wp(x)
    for (double x : {0.17, 0.31, 0.46}) {
        CHECK(wp(mu * x, b) ==
              doctest::Approx(wp(x, a) / (mu * mu)).epsilon(tol::homogeneity_scaling));
        CHECK(zeta(mu * x, b) == doctest::Approx(zeta(x, a) / mu).epsilon(tol::homogeneity_scaling));
    }
}

TEST_CASE("eta1 -> pi^2/(6l) as the lattice degenerates to the cylinder") {
    const auto lat = lattice_from_periods(1.0, 8.0);
    CHECK(lat.eta1 == doctest::Approx(pi * pi / 6.0).epsilon(1e-12));
}

TEST_CASE("wp: evenness, periodicity and the cubic differential identity") {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const double x = rng.uniform(0.05, 0.95) * kLat41.l;
        const double w = wp(x, kLat41);
        CHECK(std::abs(wp(kLat41.l - x, kLat41) - w) < tol::wp_periodicity * (1.0 + std::abs(w)));
        CHECK(std::abs(wp(x + kLat41.l, kLat41) - w) < tol::wp_periodicity * (1.0 + std::abs(w)));
        // (wp')^2 = 4 wp^3 - g2 wp - g3 with wp' from central differences
        const double h = 1e-6;
        const double wd = (wp(x + h, kLat41) - wp(x - h, kLat41)) / (2.0 * h);
        const double rhs = 4.0 * w * w * w - kLat41.g2 * w - kLat41.g3;
        CHECK(std::abs(wd * wd - rhs) < tol::wp_cubic_identity * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("wp(0.3) on the (4,1) lattice against the Laurent oracle") {
    const double frozen = 11.12941024768588;
    CHECK(wp(0.3, kLat41) == doctest::Approx(frozen).epsilon(1e-13));
    CHECK(oracles::wp_laurent(0.3, 4.0, 1.0) == doctest::Approx(frozen).epsilon(1e-12));
}

TEST_CASE("wp pole errors at lattice points") {
    CHECK_THROWS_AS(wp(0.0, kLat41), pole_error);
    CHECK_THROWS_AS(wp(kLat41.l, kLat41), pole_error);
    CHECK_THROWS_AS(wp(1e-14 * kLat41.l, kLat41), pole_error);
    CHECK_THROWS_AS(zeta(-2.0 * kLat41.l, kLat41), pole_error);
}

TEST_CASE("zeta: oddness, quasi-periodicity and the definition of eta1") {
    // the defining identity, exact up to last-bit rounding in the series
    CHECK(zeta(0.5 * kLat41.l, kLat41) ==
          doctest::Approx(kLat41.eta1).epsilon(1e-14));
    Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        const double x = rng.uniform(0.05, 0.95) * kLat41.l;
        const double z = zeta(x, kLat41);
        CHECK(std::abs(zeta(-x, kLat41) + z) < 1e-12 * (1.0 + std::abs(z)));
        CHECK(std::abs(zeta(x + kLat41.l, kLat41) - z - 2.0 * kLat41.eta1) <
              tol::zeta_quasi_periodicity * (1.0 + std::abs(z)));
        const double h = 1e-5 * kLat41.l;
        const double zd = (zeta(x + h, kLat41) - zeta(x - h, kLat41)) / (2.0 * h);
        const double w = wp(x, kLat41);
        CHECK(std::abs(zd + w) < tol::zeta_derivative_fd * (1.0 + std::abs(w)));
    }
    CHECK(std::abs(oracles::zeta_laurent(0.3, 4.0, 1.0) - zeta(0.3, kLat41)) < 1e-12);
}

TEST_CASE("zeta cot identity at a nearly degenerate lattice") {
    // zeta(x; 4b^4/3, 8b^6/27) - b^2 x / 3 = b cot(b x), approached from the
    // interior of the validity region as Im w3 grows (beta = pi/l)
    const auto lat = lattice_from_periods(1.0, 6.0);
    const double beta = pi;
    for (double x : {0.12, 0.34, 0.47}) {
        const double lhs = zeta(x, lat) - beta * beta * x / 3.0;
        CHECK(std::abs(lhs - beta / std::tan(beta * x)) < 1e-10 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("trig limit: deviation decreases through im_omega3/l = 1,2,4,8") {
    double prev = std::numeric_limits<double>::infinity();
    for (double b : {1.0, 2.0, 4.0, 8.0}) {
        const auto lat = lattice_from_periods(1.0, b);
        double dev = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const double x = i / 41.0;
            dev = std::max(dev, std::abs(zeta(x, lat) - pi * pi * x / 3.0 -
                                         pi / std::tan(pi * x)));
        }
        // monotone decrease until the double-precision floor
        CHECK((dev < prev || dev < 1e-12));
        prev = dev;
        if (b == 8.0) CHECK(dev < tol::trig_limit_deviation);
    }
    // wp limit at the largest aspect ratio
    const auto lat = lattice_from_periods(1.0, 8.0);
    for (double x : {0.2, 0.5, 0.8}) {
        const double s = std::sin(pi * x);
        CHECK(std::abs(wp(x, lat) - pi * pi * (1.0 / (s * s) - 1.0 / 3.0)) < 1e-10);
    }
}

TEST_CASE("log_sigma: small-x asymptotics, symmetry and derivative") {
    for (double x : {1e-3, 1e-5, 1e-7})
        CHECK(std::abs(log_sigma(x, kSquare) - std::log(x)) < 1e-10);

    // h(x) = log sigma - eta1 x^2 / l is symmetric about l/2
    Rng rng(33);
    for (int i = 0; i < 40; ++i) {
        const double x = rng.uniform(0.02, 0.98) * kSquare.l;
        const double hx = log_sigma(x, kSquare) - kSquare.eta1 * x * x / kSquare.l;
        const double hr = log_sigma(kSquare.l - x, kSquare) -
                          kSquare.eta1 * (kSquare.l - x) * (kSquare.l - x) / kSquare.l;
        CHECK(std::abs(hx - hr) < tol::log_sigma_symmetry);
    }
    // d/dx log sigma = zeta
    for (double x : {0.2, 0.4, 0.7}) {
        const double h = 1e-5;
        const double d = (log_sigma(x + h, kSquare) - log_sigma(x - h, kSquare)) / (2.0 * h);
        const double z = zeta(x, kSquare);
        CHECK(std::abs(d - z) < tol::zeta_derivative_fd * (1.0 + std::abs(z)));
    }
}

TEST_CASE("log_sigma(0.25) on the square lattice against two oracles") {
    const double frozen = -1.389379853456718;
    CHECK(log_sigma(0.25, kSquare) == doctest::Approx(frozen).epsilon(1e-13));
    CHECK(std::abs(oracles::log_sigma_laurent(0.25, kSquare.g2, kSquare.g3) - frozen) < 1e-11);
    CHECK(std::abs(oracles::log_sigma_product(0.25, 1.0, 0.5, 600) - frozen) < 1e-6);
}

TEST_CASE("log_sigma domain handling") {
    CHECK(std::isinf(log_sigma(0.0, kSquare)));
    CHECK(std::isinf(log_sigma(kSquare.l, kSquare)));
    CHECK(log_sigma(0.0, kSquare) < 0.0);
    CHECK_THROWS_AS(log_sigma(-0.1, kSquare), std::domain_error);
    CHECK_THROWS_AS(log_sigma(1.1 * kSquare.l, kSquare), std::domain_error);
}

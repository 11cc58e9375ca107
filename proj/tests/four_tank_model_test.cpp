#include <doctest.h>

#include <cmath>
#include <random>

#include "ztk/plant/four_tank.hpp"
#include "ztk/sim/errors.hpp"

using ztk::V2;

TEST_CASE("input gains and internal coefficients match their frozen values") {
    auto pa = ztk::four_tank_actual_params();
    auto pn = ztk::four_tank_nominal_params();
    auto A = ztk::NormalFormPlant::make(pa);
    auto N = ztk::NormalFormPlant::make(pn);

    CHECK(A.gain1() == doctest::Approx(0.04822142857142857).epsilon(1e-12));
    CHECK(A.gain2() == doctest::Approx(0.03495625).epsilon(1e-12));
    CHECK(N.gain1() == doctest::Approx(0.04500666666666667).epsilon(1e-12));
    CHECK(N.gain2() == doctest::Approx(0.035).epsilon(1e-12));

    // coefficients come from a finite-difference cancellation probe, so give
    // them the probe's accuracy, not machine epsilon
    CHECK(A.T1() == doctest::Approx(1.159883720930233).epsilon(1e-7));
    CHECK(A.T2() == doctest::Approx(2.218487394957983).epsilon(1e-7));
    CHECK(N.T1() == doctest::Approx(1.169630642954856).epsilon(1e-7));
    CHECK(N.T2() == doctest::Approx(2.2).epsilon(1e-7));
}

TEST_CASE("internal coordinates are input-free across random states") {
    auto p = ztk::four_tank_actual_params();
    auto plant = ztk::NormalFormPlant::make(p);
    const double T1 = plant.T1(), T2 = plant.T2();

    std::mt19937_64 eng(99);
    auto lvl = [&] { return 0.5 + 24.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53); };
    auto volt = [&] { return 10.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53); };

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 4> h{lvl(), lvl(), lvl(), lvl()};
        V2 ua(volt(), volt()), ub(volt(), volt());
        auto da = ztk::four_tank_level_derivs(p, h, ua);
        auto db = ztk::four_tank_level_derivs(p, h, ub);
        const double dz1a = da[2] - T2 * da[1], dz1b = db[2] - T2 * db[1];
        const double dz2a = da[3] - T1 * da[0], dz2b = db[3] - T1 * db[0];
        worst = std::max({worst, std::abs(dz1a - dz1b), std::abs(dz2a - dz2b)});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("normal form reproduces the level model derivative for derivative") {
    for (bool nominal : {false, true}) {
        auto p = nominal ? ztk::four_tank_nominal_params() : ztk::four_tank_actual_params();
        auto plant = ztk::NormalFormPlant::make(p);
        const std::array<double, 4> h{12.0, 13.0, 4.8, 4.9};
        const V2 u(3.0, 3.1);

        const V2 x(h[0], h[1]);
        const V2 z(h[2] - plant.T2() * h[1], h[3] - plant.T1() * h[0]);
        CHECK(plant.rad1(z, x) == doctest::Approx(h[2]).epsilon(1e-12));
        CHECK(plant.rad2(z, x) == doctest::Approx(h[3]).epsilon(1e-12));

        auto dh = ztk::four_tank_level_derivs(p, h, u);
        V2 dx = plant.F(z, x) + plant.G(u);
        V2 dz = plant.H(z, x);
        CHECK(dx(0) == doctest::Approx(dh[0]).epsilon(1e-9));
        CHECK(dx(1) == doctest::Approx(dh[1]).epsilon(1e-9));
        CHECK(dz(0) == doctest::Approx(dh[2] - plant.T2() * dh[1]).epsilon(1e-9));
        CHECK(dz(1) == doctest::Approx(dh[3] - plant.T1() * dh[0]).epsilon(1e-9));
    }
}

TEST_CASE("output drift vanishes when upper and lower levels match") {
    auto plant = ztk::NormalFormPlant::make(ztk::four_tank_actual_params());
    const V2 x(4.0, 9.0);
    const V2 z(x(0) - plant.T2() * x(1), x(1) - plant.T1() * x(0));
    V2 f = plant.F(z, x);
    CHECK(std::abs(f(0)) < 1e-12);
    CHECK(std::abs(f(1)) < 1e-12);
}

TEST_CASE("actual and nominal plants are non-minimum phase") {
    CHECK(ztk::four_tank_actual_params().non_minimum_phase());
    CHECK(ztk::four_tank_nominal_params().non_minimum_phase());
    auto p = ztk::four_tank_actual_params();
    p.sigma1 = 0.7;
    p.sigma2 = 0.6;
    CHECK_FALSE(p.non_minimum_phase());
}

TEST_CASE("parameter validation rejects non-physical values") {
    auto p = ztk::four_tank_actual_params();
    p.A_L = -1.0;
    CHECK_THROWS_AS(p.validate(), ztk::ConfigError);
    p = ztk::four_tank_actual_params();
    p.sigma1 = 1.0;
    CHECK_THROWS_AS(p.validate(), ztk::ConfigError);
    p = ztk::four_tank_actual_params();
    p.g = 0.0;
    CHECK_THROWS_AS(p.validate(), ztk::ConfigError);
}

TEST_CASE("strict dynamics refuse states with negative levels") {
    auto plant = ztk::NormalFormPlant::make(ztk::four_tank_actual_params());
    const V2 x(4.0, 9.0);
    const V2 z(-100.0, 0.0);  // rad1 < 0
    CHECK_FALSE(plant.in_domain(z, x));
    CHECK_THROWS_AS(plant.H(z, x), ztk::DomainError);
    CHECK_THROWS_AS(plant.F(z, x), ztk::DomainError);
    CHECK_THROWS_AS(plant.H(V2(0, 0), V2(-1.0, 9.0)), ztk::DomainError);
}

TEST_CASE("clamped dynamics stay finite and report the clamp") {
    auto plant = ztk::NormalFormPlant::make(ztk::four_tank_actual_params());
    const V2 x(4.0, 9.0);
    const V2 z(-100.0, 0.0);
    bool clamped = false;
    V2 h = plant.H_clamped(z, x, &clamped);
    CHECK(clamped);
    CHECK(std::isfinite(h(0)));
    CHECK(std::isfinite(h(1)));
    // clamped radicand behaves as an empty upper tank: no outflow from it
    V2 href = plant.H_clamped(V2(-plant.T2() * x(1), 0.0), x);
    CHECK(h(0) == doctest::Approx(href(0)).epsilon(1e-12));

    clamped = false;
    plant.F_clamped(V2(0, 0), x, &clamped);
    CHECK_FALSE(clamped);
}

TEST_CASE("gravity scales the rates but not the coefficients") {
    auto lo = ztk::NormalFormPlant::make(ztk::four_tank_actual_params(9.81));
    auto hi = ztk::NormalFormPlant::make(ztk::four_tank_actual_params(981.0));
    CHECK(lo.T1() == doctest::Approx(hi.T1()).epsilon(1e-9));
    CHECK(lo.T2() == doctest::Approx(hi.T2()).epsilon(1e-9));
    CHECK(hi.kappa1() == doctest::Approx(10.0 * lo.kappa1()).epsilon(1e-12));
    CHECK(hi.kappa2() == doctest::Approx(10.0 * lo.kappa2()).epsilon(1e-12));
    CHECK(lo.gain1() == hi.gain1());
}

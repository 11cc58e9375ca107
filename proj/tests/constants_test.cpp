#include <doctest.h>

#include <Eigen/Core>
#include <cmath>

#include "ztk/plant/constants.hpp"
#include "ztk/sim/errors.hpp"

using Eigen::VectorXd;
using ztk::V2;

TEST_CASE("lipschitz sampling brackets a linear map's singular values") {
    auto f = [](const VectorXd& v) {
        VectorXd out(2);
        out << 2.0 * v(0), 3.0 * v(1);
        return out;
    };
    VectorXd lo(2), hi(2);
    lo << -1.0, -1.0;
    hi << 1.0, 1.0;
    auto r = ztk::mc_lipschitz_range(f, lo, hi, 100000, 7);
    CHECK(r.lo >= 2.0);
    CHECK(r.lo < 2.06);
    CHECK(r.hi <= 3.0);
    CHECK(r.hi > 2.94);
    CHECK(r.seed == 7);
}

TEST_CASE("lipschitz sampling finds the square root's steepest secant") {
    auto f = [](const VectorXd& v) {
        VectorXd out(1);
        out << std::sqrt(v(0));
        return out;
    };
    VectorXd lo(1), hi(1);
    lo << 1.0;
    hi << 4.0;
    auto r = ztk::mc_lipschitz_range(f, lo, hi, 100000, 11);
    CHECK(r.hi <= 0.5);   // 1/(sqrt(p)+sqrt(q)) peaks at the left edge
    CHECK(r.hi > 0.49);
    CHECK(r.lo >= 0.25);  // and bottoms out at the right edge
    CHECK(r.lo < 0.26);
}

TEST_CASE("lipschitz sampling is reproducible per seed") {
    auto f = [](const VectorXd& v) { return VectorXd(v.array().square()); };
    VectorXd lo(2), hi(2);
    lo << 0.0, 0.0;
    hi << 2.0, 2.0;
    auto a = ztk::mc_lipschitz_range(f, lo, hi, 5000, 42);
    auto b = ztk::mc_lipschitz_range(f, lo, hi, 5000, 42);
    auto c = ztk::mc_lipschitz_range(f, lo, hi, 5000, 43);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    CHECK(a.hi != c.hi);
}

TEST_CASE("lipschitz sampling rejects degenerate requests") {
    auto f = [](const VectorXd& v) { return v; };
    VectorXd lo(2), hi(2);
    lo << 0.0, 0.0;
    hi << 0.0, 1.0;
    CHECK_THROWS_AS(ztk::mc_lipschitz_range(f, lo, hi, 100, 1), ztk::DegenerateBox);
    hi << 1.0, 1.0;
    CHECK_THROWS_AS(ztk::mc_lipschitz_range(f, lo, hi, 0, 1), ztk::ConfigError);
    VectorXd hi3(3);
    hi3 << 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(ztk::mc_lipschitz_range(f, lo, hi3, 100, 1), ztk::ConfigError);
}

TEST_CASE("assumption constants are finite, positive and self-consistent") {
    auto actual = ztk::NormalFormPlant::make(ztk::four_tank_actual_params());
    auto nominal = ztk::NormalFormPlant::make(ztk::four_tank_nominal_params());
    ztk::StateBox box;
    box.z_lo = V2(-17.0, -11.0);
    box.z_hi = V2(-14.0, -8.0);
    box.x_lo = V2(8.0, 8.0);
    box.x_hi = V2(12.0, 12.0);

    auto ac = ztk::estimate_constants(actual, nominal, box, 20000, 20240817);

    CHECK(ac.c3 > 0.0);
    CHECK(ac.c4 > 0.0);
    CHECK(ac.c5 > 0.0);
    CHECK(ac.c9 > 0.0);
    CHECK(ac.c7 <= ac.c8);
    CHECK(ac.lambda_max > 0.0);
    CHECK(ac.n_pairs == 20000);
    CHECK(ac.seed == 20240817);

    // the inverse input map is diagonal: its secant ratios live between the
    // reciprocals of the two input gains
    CHECK(ac.c7 >= 1.0 / 0.04500666666666667 - 1e-9);
    CHECK(ac.c7 < 23.0);
    CHECK(ac.c8 <= 1.0 / 0.035 + 1e-9);
    CHECK(ac.c8 > 28.0);

    CHECK(ac.detection_gain_warning == (ac.c3 <= 6.0 * ac.c5 * ac.c4));
}

TEST_CASE("assumption constants reject an empty sampling box") {
    auto actual = ztk::NormalFormPlant::make(ztk::four_tank_actual_params());
    auto nominal = ztk::NormalFormPlant::make(ztk::four_tank_nominal_params());
    ztk::StateBox box;
    box.z_lo = V2(-17.0, -11.0);
    box.z_hi = V2(-17.0, -8.0);
    box.x_lo = V2(8.0, 8.0);
    box.x_hi = V2(12.0, 12.0);
    CHECK_THROWS_AS(ztk::estimate_constants(actual, nominal, box, 100, 1), ztk::DegenerateBox);
}

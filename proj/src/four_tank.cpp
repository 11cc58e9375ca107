#include "ztk/plant/four_tank.hpp"

#include <cmath>

namespace ztk {

void FourTankParams::validate() const {
    auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!pos(A_L) || !pos(A_R) || !pos(a_L) || !pos(a_R) || !pos(k1) || !pos(k2) || !pos(g))
        throw ConfigError("tank params: areas, outlet sections, pump gains and g must be > 0");
    if (!(sigma1 > 0.0 && sigma1 < 1.0 && sigma2 > 0.0 && sigma2 < 1.0))
        throw ConfigError("tank params: flow splits must lie in (0, 1)");
}

FourTankParams four_tank_actual_params(double g) {
    FourTankParams p;
    p.g = g;
    return p;
}

FourTankParams four_tank_nominal_params(double g) {
    FourTankParams p;
    p.A_L = 30.0;
    p.A_R = 34.0;
    p.a_L = 0.101;
    p.a_R = 0.057;
    p.k2 = 3.5;
    p.g = g;
    return p;
}

std::array<double, 4> four_tank_level_derivs(const FourTankParams& p,
                                             const std::array<double, 4>& h,
                                             const V2& u) {
    auto out = [&](double lvl) { return std::sqrt(2.0 * p.g * std::max(lvl, 0.0)); };
    return {
        (-p.a_L * out(h[0]) + p.a_L * out(h[2]) + p.sigma1 * p.k1 * u(0)) / p.A_L,
        (-p.a_R * out(h[1]) + p.a_R * out(h[3]) + p.sigma2 * p.k2 * u(1)) / p.A_R,
        (-p.a_L * out(h[2]) + (1.0 - p.sigma2) * p.k2 * u(1)) / p.A_L,
        (-p.a_R * out(h[3]) + (1.0 - p.sigma1) * p.k1 * u(0)) / p.A_R,
    };
}

ZeroDynCoeffs derive_zero_dyn_coeffs(const FourTankParams& p) {
    p.validate();
    // d/dt(h3 - T2*h2) loses its u2 term iff T2 = (dh3'/du2)/(dh2'/du2);
    // likewise T1 for u1 in d/dt(h4 - T1*h1). The derivative ratios come from
    // the level model itself so the result is the cancellation, not a formula.
    const std::array<double, 4> h{7.0, 9.0, 3.0, 2.0};
    const double du = 1e-6;
    auto probe = [&](int comp) {
        V2 up(1.0, 1.0), um(1.0, 1.0);
        up(comp) += du;
        um(comp) -= du;
        auto dp = four_tank_level_derivs(p, h, up);
        auto dm = four_tank_level_derivs(p, h, um);
        std::array<double, 4> d{};
        for (int i = 0; i < 4; ++i) d[i] = (dp[i] - dm[i]) / (2.0 * du);
        return d;
    };
    auto d_u1 = probe(0);
    auto d_u2 = probe(1);
    if (std::abs(d_u2[1]) < 1e-15 || std::abs(d_u1[0]) < 1e-15)
        throw SolveError("zero-dynamics coefficients: no input cancellation exists");
    return {d_u1[3] / d_u1[0], d_u2[2] / d_u2[1]};
}

NormalFormPlant NormalFormPlant::make(const FourTankParams& p) {
    p.validate();
    auto T = derive_zero_dyn_coeffs(p);
    return NormalFormPlant(p, T.T1, T.T2);
}

NormalFormPlant::NormalFormPlant(const FourTankParams& p, double T1, double T2)
    : p_(p), T1_(T1), T2_(T2) {
    g1_ = p.sigma1 * p.k1 / p.A_L;
    g2_ = p.sigma2 * p.k2 / p.A_R;
    const double s2g = std::sqrt(2.0 * p.g);
    kapL_ = p.a_L / p.A_L * s2g;
    kapR_ = p.a_R / p.A_R * s2g;
}

V2 NormalFormPlant::eval_H(double r1, double r2, const V2& x) const {
    const double s1 = std::sqrt(r1), s2 = std::sqrt(r2);
    const double sx1 = std::sqrt(x(0)), sx2 = std::sqrt(x(1));
    return V2(-kapL_ * s1 + T2_ * kapR_ * (sx2 - s2),
              -kapR_ * s2 + T1_ * kapL_ * (sx1 - s1));
}

V2 NormalFormPlant::eval_F(double r1, double r2, const V2& x) const {
    const double s1 = std::sqrt(r1), s2 = std::sqrt(r2);
    return V2(kapL_ * (s1 - std::sqrt(x(0))), kapR_ * (s2 - std::sqrt(x(1))));
}

V2 NormalFormPlant::H(const V2& z, const V2& x) const {
    if (!in_domain(z, x)) throw DomainError("H: state outside validity region (negative level)");
    return eval_H(rad1(z, x), rad2(z, x), x);
}

V2 NormalFormPlant::F(const V2& z, const V2& x) const {
    if (!in_domain(z, x)) throw DomainError("F: state outside validity region (negative level)");
    return eval_F(rad1(z, x), rad2(z, x), x);
}

V2 NormalFormPlant::H_clamped(const V2& z, const V2& x, bool* clamped) const {
    double r1 = rad1(z, x), r2 = rad2(z, x);
    double x1 = x(0), x2 = x(1);
    bool c = r1 < 0 || r2 < 0 || x1 < 0 || x2 < 0;
    if (c && clamped) *clamped = true;
    return eval_H(std::max(r1, 0.0), std::max(r2, 0.0),
                  V2(std::max(x1, 0.0), std::max(x2, 0.0)));
}

V2 NormalFormPlant::F_clamped(const V2& z, const V2& x, bool* clamped) const {
    double r1 = rad1(z, x), r2 = rad2(z, x);
    double x1 = x(0), x2 = x(1);
    bool c = r1 < 0 || r2 < 0 || x1 < 0 || x2 < 0;
    if (c && clamped) *clamped = true;
    return eval_F(std::max(r1, 0.0), std::max(r2, 0.0),
                  V2(std::max(x1, 0.0), std::max(x2, 0.0)));
}

}  // namespace ztk

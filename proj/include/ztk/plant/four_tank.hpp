#pragma once
#include <Eigen/Core>
#include <array>

#include "ztk/sim/errors.hpp"

namespace ztk {

using V2 = Eigen::Vector2d;
using M2 = Eigen::Matrix2d;

// Quadruple-tank parameters. Tanks 1,2 are the lower (output) pair, 3,4 the
// upper pair; left column (1,3) shares A_L/a_L, right column (2,4) A_R/a_R.
// Pump 1 splits sigma1 to tank 1 and the rest to tank 4; pump 2 splits sigma2
// to tank 2 and the rest to tank 3. g is in cm/s^2 (config-exposed; see README
// for the unit note).
struct FourTankParams {
    double A_L = 28.0, A_R = 32.0;   // tank cross sections, cm^2
    double a_L = 0.071, a_R = 0.057; // outlet sections, cm^2
    double k1 = 3.14, k2 = 3.29;     // pump gains, cm^3/(V s)
    double sigma1 = 0.43, sigma2 = 0.34;
    double g = 981.0;

    void validate() const;
    bool non_minimum_phase() const { return sigma1 + sigma2 < 1.0; }
};

FourTankParams four_tank_actual_params(double g = 981.0);
FourTankParams four_tank_nominal_params(double g = 981.0);

// Raw physical model, d/dt of the four levels. This is the ground truth the
// normal form must agree with; it is also what the coordinate-coefficient
// derivation differentiates.
std::array<double, 4> four_tank_level_derivs(const FourTankParams& p,
                                             const std::array<double, 4>& h,
                                             const V2& u);

struct ZeroDynCoeffs {
    double T1, T2;
};

// Coefficients of the internal coordinates z1 = h3 - T2*h2, z2 = h4 - T1*h1,
// chosen so that d/dt z contains no direct input term. Found by finite
// differencing the level model in u (the defining cancellation property), not
// by a hard-coded formula. SolveError if no cancellation exists.
ZeroDynCoeffs derive_zero_dyn_coeffs(const FourTankParams& p);

// Two-input two-output system in normal form:
//   z' = H(z, x),  x' = F(z, x) + G(u),  y = x
// with the radicands rad1 = z1 + T2*x2 (= h3) and rad2 = z2 + T1*x1 (= h4).
// H and F throw DomainError outside the validity region; the *_clamped
// variants clamp radicands at zero (an empty tank stops draining) and report
// that they did, which is what the closed-loop simulation uses.
class NormalFormPlant {
public:
    static constexpr int n_z = 2, n_x = 2, n_u = 2;

    static NormalFormPlant make(const FourTankParams& p);

    const FourTankParams& params() const { return p_; }
    double T1() const { return T1_; }
    double T2() const { return T2_; }

    double rad1(const V2& z, const V2& x) const { return z(0) + T2_ * x(1); }
    double rad2(const V2& z, const V2& x) const { return z(1) + T1_ * x(0); }
    bool in_domain(const V2& z, const V2& x) const {
        return x(0) >= 0 && x(1) >= 0 && rad1(z, x) >= 0 && rad2(z, x) >= 0;
    }

    V2 H(const V2& z, const V2& x) const;
    V2 F(const V2& z, const V2& x) const;
    V2 H_clamped(const V2& z, const V2& x, bool* clamped = nullptr) const;
    V2 F_clamped(const V2& z, const V2& x, bool* clamped = nullptr) const;

    V2 G(const V2& u) const { return V2(g1_ * u(0), g2_ * u(1)); }
    V2 Ginv(const V2& v) const { return V2(v(0) / g1_, v(1) / g2_); }
    double gain1() const { return g1_; }
    double gain2() const { return g2_; }

    // outflow coefficients a/A * sqrt(2g), shared with the recovery map
    double kappa1() const { return kapL_; }
    double kappa2() const { return kapR_; }

private:
    NormalFormPlant(const FourTankParams& p, double T1, double T2);
    V2 eval_H(double r1, double r2, const V2& x) const;
    V2 eval_F(double r1, double r2, const V2& x) const;

    FourTankParams p_;
    double T1_, T2_;
    double g1_, g2_;    // sigma1*k1/A_L, sigma2*k2/A_R
    double kapL_, kapR_;
};

}  // namespace ztk

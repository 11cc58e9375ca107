#include "ztk/plant/operating_point.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ztk/sim/rk4.hpp"

namespace ztk {

namespace {

// Steady state of one loop from the flow balance: at equilibrium the total
// inflow of each lower tank equals its outflow, which is exactly the
// feedforward relation Mff*u = (a_L sqrt(2g r1), a_R sqrt(2g r2)); the upper
// levels then follow from each upper tank's own balance.
struct LoopSteady {
    V2 u, z, c;
    double h3, h4;
};

LoopSteady closed_form(const NormalFormPlant& plant, const PIController& ctrl, const V2& r) {
    const FourTankParams& p = plant.params();
    LoopSteady s;
    s.u = ctrl.feedforward(r);
    const double q3 = (1.0 - p.sigma2) * p.k2 * s.u(1);  // inflow of tank 3
    const double q4 = (1.0 - p.sigma1) * p.k1 * s.u(0);
    if (q3 < 0 || q4 < 0)
        throw SolveError("operating point: negative steady pump flow for this reference");
    s.h3 = q3 * q3 / (p.a_L * p.a_L * 2.0 * p.g);
    s.h4 = q4 * q4 / (p.a_R * p.a_R * 2.0 * p.g);
    s.z = V2(s.h3 - plant.T2() * r(1), s.h4 - plant.T1() * r(0));
    s.c = ctrl.integrator_for(s.u, r);
    return s;
}

// Relaxation: run the attack-free loop from the seed until the state
// derivative stays below tol for a whole window.
void relax_verify(const NormalFormPlant& plant, const PIController& ctrl, const V2& r,
                  const LoopSteady& seed, const SolveOptions& opt) {
    using V6 = Eigen::Matrix<double, 6, 1>;
    V6 s;
    s << seed.z, r, seed.c;
    auto field = [&](double, const V6& v) {
        const V2 z = v.segment<2>(0), x = v.segment<2>(2), c = v.segment<2>(4);
        const V2 u = ctrl.output(c, x, r);
        V6 d;
        d << plant.H(z, x), plant.F(z, x) + plant.G(u), r - x;
        return d;
    };
    double settled = 0.0;
    for (double t = 0.0; t < opt.horizon; t += opt.dt) {
        if (field(t, s).cwiseAbs().maxCoeff() < opt.tol) {
            settled += opt.dt;
            if (settled >= opt.window) return;
        } else {
            settled = 0.0;
        }
        s = rk4_step(field, t, s, opt.dt);
    }
    throw NoConvergence("operating point: relaxation did not settle within the horizon");
}

// Newton on H(z, x*) = 0 with the analytic Jacobian, from a perturbed start.
V2 newton_crosscheck(const NormalFormPlant& plant, const V2& z0, const V2& x) {
    // Perturb towards lower levels only as far as the headroom allows: some
    // parameter sets balance with an upper tank nearly empty.
    V2 z = z0;
    z(0) += 0.4;
    z(1) -= std::min(0.4, 0.1 * plant.rad2(z0, x));
    for (int it = 0; it < 60; ++it) {
        const double r1 = plant.rad1(z, x), r2 = plant.rad2(z, x);
        if (r1 <= 0 || r2 <= 0) throw SolveError("operating point: Newton left the domain");
        const V2 h = plant.H(z, x);
        if (h.cwiseAbs().maxCoeff() < 1e-13) return z;
        M2 J;
        J << -plant.kappa1() / (2.0 * std::sqrt(r1)), -plant.T2() * plant.kappa2() / (2.0 * std::sqrt(r2)),
             -plant.T1() * plant.kappa1() / (2.0 * std::sqrt(r1)), -plant.kappa2() / (2.0 * std::sqrt(r2));
        z -= J.fullPivLu().solve(h);
    }
    throw SolveError("operating point: Newton cross-check did not converge");
}

}  // namespace

OperatingPoint solve_operating_point(const NormalFormPlant& actual,
                                     const NormalFormPlant& nominal,
                                     const PIController& ctrl_actual,
                                     const PIController& ctrl_nominal,
                                     const V2& y_ref,
                                     const SolveOptions& opt) {
    if (!(y_ref(0) > 0 && y_ref(1) > 0))
        throw ConfigError("operating point: reference must be positive");

    const LoopSteady a = closed_form(actual, ctrl_actual, y_ref);
    const LoopSteady n = closed_form(nominal, ctrl_nominal, y_ref);

    relax_verify(actual, ctrl_actual, y_ref, a, opt);
    relax_verify(nominal, ctrl_nominal, y_ref, n, opt);

    const V2 z_newton = newton_crosscheck(actual, a.z, y_ref);
    if ((z_newton - a.z).cwiseAbs().maxCoeff() > 1e-8)
        throw SolveError("operating point: Newton solution disagrees with the balance solution");

    OperatingPoint op;
    op.x_star = y_ref;
    op.z_star = a.z;
    op.z_star_n = n.z;
    op.u_c_star = a.u;
    op.u_mc_star = n.u;
    op.c_star = a.c;
    op.c_star_n = n.c;
    return op;
}

}  // namespace ztk

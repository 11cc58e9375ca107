#include "ztk/plant/constants.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "ztk/plant/operating_point.hpp"
#include "ztk/sim/jacobian.hpp"

namespace ztk {

namespace {

double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
}

}  // namespace

AssumptionConstants estimate_constants(const NormalFormPlant& actual,
                                       const NormalFormPlant& nominal,
                                       const StateBox& box,
                                       int n_pairs,
                                       uint64_t seed,
                                       const PIGains& gains) {
    (void)actual;  // mismatch enters through c3 (actual closed loop); maps below are nominal
    for (int i = 0; i < 2; ++i) {
        if (!(box.z_lo(i) < box.z_hi(i)) || !(box.x_lo(i) < box.x_hi(i)))
            throw DegenerateBox("constants: sampling box has an empty side");
    }
    if (n_pairs < 1) throw ConfigError("constants: need at least one sample pair");

    std::mt19937_64 eng(seed);
    auto draw_state = [&](V2& z, V2& x) {
        for (int i = 0; i < 2; ++i) {
            z(i) = uniform(eng, box.z_lo(i), box.z_hi(i));
            x(i) = uniform(eng, box.x_lo(i), box.x_hi(i));
        }
    };

    const V2 x_mid = 0.5 * (box.x_lo + box.x_hi);
    const V2 z_mid = 0.5 * (box.z_lo + box.z_hi);

    double c5 = 0.0, c7 = 1e300, c8 = 0.0, c9 = 1e300;
    for (int k = 0; k < n_pairs; ++k) {
        V2 z1v, x1v, z2v, x2v;
        draw_state(z1v, x1v);
        draw_state(z2v, x2v);
        Eigen::Vector4d p, q;
        p << z1v, x1v;
        q << z2v, x2v;
        const double dzx = (p - q).norm();
        if (dzx > 1e-12) {
            // domain guard: skip pairs whose radicands would go negative
            if (nominal.in_domain(z1v, x1v) && nominal.in_domain(z2v, x2v)) {
                const double dH = (nominal.H(z1v, x1v) - nominal.H(z2v, x2v)).norm();
                const double dF = (nominal.F(z1v, x1v) - nominal.F(z2v, x2v)).norm();
                c5 = std::max(c5, std::max(dH, dF) / dzx);
            }
            // F_n in z at the box-centre output level (lower bi-Lipschitz side)
            const double dz = (z1v - z2v).norm();
            if (dz > 1e-12 && nominal.in_domain(z1v, x_mid) && nominal.in_domain(z2v, x_mid)) {
                const double dFz = (nominal.F(z1v, x_mid) - nominal.F(z2v, x_mid)).norm();
                c9 = std::min(c9, dFz / dz);
            }
        }
        // G_n and its inverse are linear, sample them on an input box
        V2 u1(uniform(eng, -10.0, 10.0), uniform(eng, -10.0, 10.0));
        V2 u2(uniform(eng, -10.0, 10.0), uniform(eng, -10.0, 10.0));
        const double duv = (u1 - u2).norm();
        if (duv > 1e-12) {
            c5 = std::max(c5, (nominal.G(u1) - nominal.G(u2)).norm() / duv);
            const double rinv = (nominal.Ginv(u1) - nominal.Ginv(u2)).norm() / duv;
            c7 = std::min(c7, rinv);
            c8 = std::max(c8, rinv);
        }
    }
    // the feedforward mixing matrix is linear as well; its norm caps c5 directly
    const PIController nctrl = PIController::make(nominal.params(), gains);
    c5 = std::max(c5, nctrl.Mff().operatorNorm());

    AssumptionConstants out;
    out.c4 = 2.0 * std::max((box.z_hi - z_mid).norm() + (box.x_hi - x_mid).norm(),
                            (z_mid - box.z_lo).norm() + (x_mid - box.x_lo).norm());

    // c3: linearize the attack-free actual (x, c) loop at the operating point
    // for the box-centre reference, holding z at its equilibrium.
    {
        const PIController actrl = PIController::make(actual.params(), gains);
        const NormalFormPlant nom2 = nominal;  // only needed to satisfy the solver signature
        OperatingPoint op = solve_operating_point(actual, nom2, actrl, nctrl, x_mid);
        auto field = [&](const Eigen::VectorXd& s) {
            const V2 x = s.segment<2>(0), c = s.segment<2>(2);
            const V2 u = actrl.output(c, x, x_mid);
            Eigen::VectorXd d(4);
            d << actual.F(op.z_star, x) + actual.G(u), x - x_mid;
            return d;
        };
        Eigen::VectorXd s0(4);
        s0 << op.x_star, op.c_star;
        const Eigen::MatrixXd A = finite_diff_jacobian(field, s0, 1e-6);
        const Eigen::VectorXcd ev = A.eigenvalues();
        double slowest = 1e300;
        for (int i = 0; i < ev.size(); ++i)
            if (ev(i).real() < -1e-12) slowest = std::min(slowest, -ev(i).real());
        out.c3 = (slowest < 1e300) ? slowest : 0.0;
    }

    out.c5 = c5;
    out.c7 = c7;
    out.c8 = c8;
    out.c9 = c9;
    out.seed = seed;
    out.n_pairs = n_pairs;
    out.detection_gain_warning = (out.c3 <= 6.0 * out.c5 * out.c4);
    out.lambda_max = (c7 > 0 && c9 > 0) ? out.c4 / (c7 * c9) : 0.0;
    return out;
}

LipschitzRange mc_lipschitz_range(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
    int n_pairs, uint64_t seed) {
    if (lo.size() != hi.size() || lo.size() == 0)
        throw ConfigError("lipschitz: bounds must have equal nonzero size");
    for (int i = 0; i < lo.size(); ++i)
        if (!(lo(i) < hi(i))) throw DegenerateBox("lipschitz: sampling box has an empty side");
    if (n_pairs < 1) throw ConfigError("lipschitz: need at least one sample pair");

    std::mt19937_64 eng(seed);
    const int n = static_cast<int>(lo.size());
    Eigen::VectorXd p(n), q(n);
    LipschitzRange out{1e300, 0.0, seed};
    for (int k = 0; k < n_pairs; ++k) {
        for (int i = 0; i < n; ++i) p(i) = uniform(eng, lo(i), hi(i));
        for (int i = 0; i < n; ++i) q(i) = uniform(eng, lo(i), hi(i));
        const double d = (p - q).norm();
        if (d <= 1e-12) continue;
        const double r = (f(p) - f(q)).norm() / d;
        out.lo = std::min(out.lo, r);
        out.hi = std::max(out.hi, r);
    }
    if (out.hi == 0.0 && out.lo == 1e300)
        throw SolveError("lipschitz: all sampled pairs were degenerate");
    return out;
}

}  // namespace ztk

#include "ztk/recover/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "ztk/sim/rk4.hpp"

namespace ztk {

void RecoveryConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ConfigError("recovery: adaptation rate must be finite and > 0");
}

Recovery::Recovery(const NormalFormPlant& nominal, const OperatingPoint& op,
                   const RecoveryConfig& cfg)
    : model_(nominal), op_(op), cfg_(cfg) {
    cfg_.validate();
    // w lives in the injection generator's own coordinates (anchored at the
    // nominal equilibrium); the plant-equilibrium variant re-anchors the
    // drift field there instead.
    shift_ = (cfg_.drift_center == RecoveryConfig::Drift::NominalEquilibrium)
                 ? V2(V2::Zero())
                 : V2(op_.z_star - op_.z_star_n);
}

double Recovery::act(double s) const {
    if (cfg_.activation == RecoveryConfig::Activation::OddSqrt)
        return (s < 0.0) ? -std::sqrt(-s) : std::sqrt(s);
    return std::sqrt(std::max(s, 0.0));
}

double Recovery::act_deriv(double s) const {
    if (cfg_.activation == RecoveryConfig::Activation::Clamped && s <= 0.0) return 0.0;
    // slope of sqrt at |s|, kept finite through the kink at zero
    return 0.5 / std::sqrt(std::max(std::abs(s), 1e-12));
}

double Recovery::rad1n(const V2& v) const { return v(0) + model_.T2() * op_.x_star(1); }
double Recovery::rad2n(const V2& v) const { return v(1) + model_.T1() * op_.x_star(0); }

V2 Recovery::z_r() const {
    if (!engaged_) return V2::Zero();
    const double k1g = model_.kappa1() / model_.gain1();
    const double k2g = model_.kappa2() / model_.gain2();
    return V2(k1g * (act(rad1n(op_.z_star)) - act(rad1n(w_))),
              k2g * (act(rad2n(op_.z_star)) - act(rad2n(w_))));
}

M2 Recovery::jacobian(const V2& w) const {
    // each output channel depends on exactly one weight through its radicand
    M2 J = M2::Zero();
    J(0, 0) = -model_.kappa1() / model_.gain1() * act_deriv(rad1n(w));
    J(1, 1) = -model_.kappa2() / model_.gain2() * act_deriv(rad2n(w));
    return J;
}

V2 Recovery::drift(const V2& w) const {
    const V2 v = w + shift_;
    const double a1 = act(rad1n(v)), a2 = act(rad2n(v));
    const double sx1 = std::sqrt(op_.x_star(0)), sx2 = std::sqrt(op_.x_star(1));
    const double kL = model_.kappa1(), kR = model_.kappa2();
    return V2(-kL * a1 + model_.T2() * kR * (sx2 - a2),
              -kR * a2 + model_.T1() * kL * (sx1 - a1));
}

void Recovery::engage(double t) {
    if (engaged_) return;
    engaged_ = true;
    engage_time_ = t;
    w_ = op_.z_star;  // emitted signal starts at exactly zero
}

void Recovery::advance(const V2& e, double t, double dt) {
    if (!engaged_) return;
    if (!e.allFinite()) throw NonFiniteState(t, "recovery input");
    auto field = [&](double, const V2& w) {
        const M2 J = jacobian(w);
        const double n2 = J.squaredNorm();
        V2 d = drift(w);
        if (n2 < 1e-24) {
            ++singular_skips_;  // adaptation direction undefined; drift only
        } else {
            d += cfg_.lambda * (J.transpose() * e) / n2;
        }
        return d;
    };
    w_ = rk4_step(field, t, w_, dt);
}

double gamma_index(const Trajectory& recovered, const Trajectory& no_recovery,
                   const Trajectory& clean, double t_on, double t_off) {
    Trajectory::require_same_grid(recovered, no_recovery);
    Trajectory::require_same_grid(recovered, clean);
    const char* zc[2] = {"z1", "z2"};
    double num = 0.0, den = 0.0;
    const std::vector<double>& t = recovered.col(0);
    for (int c = 0; c < 2; ++c) {
        const std::vector<double>& r = recovered.col(zc[c]);
        const std::vector<double>& a = no_recovery.col(zc[c]);
        const std::vector<double>& n = clean.col(zc[c]);
        for (size_t k = 0; k < t.size(); ++k) {
            if (t[k] < t_on - 1e-12 || t[k] > t_off + 1e-12) continue;
            num = std::max(num, std::abs(r[k] - n[k]));
            den = std::max(den, std::abs(a[k] - n[k]));
        }
    }
    if (den < 1e-9)
        throw DivisionByZero("gamma: attack left no trace in the no-recovery run");
    return num / den;
}

}  // namespace ztk

#include "ztk/attack/attack.hpp"

#include <cmath>

#include "ztk/sim/rk4.hpp"
#include "ztk/sim/rng.hpp"

namespace ztk {

void AttackConfig::validate() const {
    if (!std::isfinite(t_on) || !std::isfinite(t_off) || t_off < t_on)
        throw ConfigError("attack: window must satisfy t_on <= t_off");
    if (!delta0.allFinite()) throw ConfigError("attack: delta0 must be finite");
}

AttackGenerator::AttackGenerator(const NormalFormPlant& nominal, const OperatingPoint& op,
                                 const AttackConfig& cfg)
    : model_(nominal), op_(op), cfg_(cfg) {
    cfg_.validate();
    // Start at the *actual* steady state plus the chosen offset; expressed
    // relative to the nominal equilibrium this is what the injection formula
    // consumes. The gap z_star - z_star_n is exactly the model mismatch the
    // injection has to survive.
    delta_ = (op_.z_star - op_.z_star_n) + cfg_.delta0;
    if (cfg_.mode == AttackConfig::Mode::RandomDirection) {
        GaussianRng rng(cfg_.direction_seed);
        auto [g1, g2] = rng.normal_pair();
        V2 d(g1, g2);
        if (d.norm() < 1e-12) d = V2(1.0, 0.0);
        dir_ = d / d.norm();
    }
}

bool AttackGenerator::active(double t) const {
    return cfg_.enabled && t >= cfg_.t_on - 1e-12 && t <= cfg_.t_off + 1e-12;
}

V2 AttackGenerator::zero_dyn_alpha() const {
    bool cl = false;
    const V2 f_now = model_.F_clamped(delta_ + op_.z_star_n, op_.x_star, &cl);
    const V2 f_ref = model_.F_clamped(op_.z_star, op_.x_star, &cl);
    if (cl) clamped_ = true;
    return model_.Ginv(f_ref - f_now);
}

V2 AttackGenerator::alpha(double t) const {
    if (!active(t)) return V2::Zero();
    const V2 a = zero_dyn_alpha();
    if (cfg_.mode == AttackConfig::Mode::RandomDirection) return a.norm() * dir_;
    return a;
}

void AttackGenerator::advance(double t, double dt) {
    if (!active(t)) return;
    auto field = [&](double, const V2& d) {
        bool cl = false;
        const V2 hd = model_.H_clamped(d + op_.z_star_n, op_.x_star, &cl);
        if (cl) clamped_ = true;
        return hd;
    };
    delta_ = rk4_step(field, t, delta_, dt);
}

}  // namespace ztk

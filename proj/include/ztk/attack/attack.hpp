#pragma once
#include <cstdint>

#include "ztk/plant/four_tank.hpp"
#include "ztk/plant/operating_point.hpp"

namespace ztk {

// Actuator injection that steers the internal (unobservable) coordinates of
// the plant while cancelling, through the nominal model, its own effect on
// the measured outputs. Inside the window the injected signal keeps the
// nominal output derivative at its equilibrium value, so on the nominal model
// the outputs would not move at all; on the mismatched actual plant a small,
// slowly growing deviation leaks through. Outside the window the injection is
// exactly zero and the internal state is frozen.
struct AttackConfig {
    enum class Mode {
        ZeroDynamics,     // output-cancelling injection
        RandomDirection,  // same magnitude profile, fixed random direction
    };

    bool enabled = true;
    double t_on = 700.0;
    double t_off = 1000.0;
    V2 delta0{-0.1, -0.1};  // initial internal offset from the steady state
    Mode mode = Mode::ZeroDynamics;
    uint64_t direction_seed = 1;  // only used in RandomDirection mode

    void validate() const;
};

class AttackGenerator {
public:
    // `nominal` is the attacker's model of the plant; `op` supplies the steady
    // state the injection is anchored at.
    AttackGenerator(const NormalFormPlant& nominal, const OperatingPoint& op,
                    const AttackConfig& cfg);

    bool active(double t) const;

    // Injected actuator signal at sample time t (exact zero when inactive).
    V2 alpha(double t) const;

    // Integrate the internal state across [t, t+dt]; frozen when inactive.
    void advance(double t, double dt);

    // Internal deviation from the nominal steady state (diagnostics/tests).
    const V2& delta_tilde() const { return delta_; }

    // True once the internal trajectory left the model's validity region and
    // the clamped dynamics took over (an upper tank ran empty).
    bool clamped() const { return clamped_; }

    const AttackConfig& config() const { return cfg_; }

private:
    V2 zero_dyn_alpha() const;

    NormalFormPlant model_;
    OperatingPoint op_;
    AttackConfig cfg_;
    V2 delta_;          // internal state minus the nominal equilibrium
    V2 dir_{1.0, 0.0};  // unit direction for the direction-probe mode
    mutable bool clamped_ = false;
};

}  // namespace ztk

#pragma once
#include "ztk/plant/four_tank.hpp"
#include "ztk/plant/operating_point.hpp"
#include "ztk/plant/pi_controller.hpp"

namespace ztk {

// Monitor-side closed loop: the nominal model and the controller one would
// use for it, fed the measured plant output as its *reference*. At health the
// measured output sits at the setpoint, so the copy settles to its own
// nominal balance and its controller output u_mc becomes the "expected input"
// the residual compares against.
struct ReplicaState {
    V2 z_mp;  // internal coordinates of the model copy
    V2 x_mp;  // outputs of the model copy
    V2 s_mc;  // copy-controller integrator
};

class Replica {
public:
    Replica(const NormalFormPlant& nominal, const PIController& ctrl,
            const OperatingPoint& op, double level_floor = 1e-6);

    // Copy-controller output for the measured plant output y (its reference).
    V2 u_mc(const V2& y) const;

    // One sampled-data step: y held over [t, t+dt], coupled states integrated.
    void advance(const V2& y, double t, double dt);

    const ReplicaState& state() const { return st_; }
    bool clamped() const { return clamped_; }  // model copy hit an empty-tank clamp

private:
    V2 sanitize(const V2& y) const;  // floor measured levels before radicals

    NormalFormPlant model_;
    PIController ctrl_;
    ReplicaState st_;
    double level_floor_;
    mutable bool clamped_ = false;
};

}  // namespace ztk

#pragma once
#include "ztk/plant/four_tank.hpp"

namespace ztk {

struct PIGains {
    M2 kp = (M2() << 0.75, 0.0, 0.0, -0.06).finished();
    M2 ki = (M2() << 0.0068, 0.0, 0.0, -0.00027).finished();
};

// Two-loop PI with a static decoupling feedforward:
//   u_c = Mff^-1 * (a_L*sqrt(2 g r1), a_R*sqrt(2 g r2)) + kp*(r - y) + ki*c
// where Mff mixes the pump voltages into the two column inflows. The
// integrator state c lives outside (c' = r - y) so the same controller record
// can serve both the real loop and the detector's replica.
class PIController {
public:
    static PIController make(const FourTankParams& p, const PIGains& gains = {});

    V2 feedforward(const V2& r) const;  // DomainError if any reference component <= 0
    V2 output(const V2& c, const V2& y, const V2& r) const {
        return feedforward(r) + gains_.kp * (r - y) + gains_.ki * c;
    }

    const M2& Mff() const { return Mff_; }
    const PIGains& gains() const { return gains_; }
    V2 integrator_for(const V2& u, const V2& r) const;  // c with output == u at y == r

private:
    PIController() = default;
    M2 Mff_, Mff_inv_;
    PIGains gains_;
    double a_L_, a_R_, g_;
};

}  // namespace ztk

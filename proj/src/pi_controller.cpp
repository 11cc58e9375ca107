#include "ztk/plant/pi_controller.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ztk {

PIController PIController::make(const FourTankParams& p, const PIGains& gains) {
    p.validate();
    PIController c;
    c.Mff_ << p.sigma1 * p.k1, (1.0 - p.sigma2) * p.k2,
              (1.0 - p.sigma1) * p.k1, p.sigma2 * p.k2;
    const double det = c.Mff_.determinant();
    if (std::abs(det) < 1e-12)
        throw SolveError("PI controller: feedforward mixing matrix is singular");
    c.Mff_inv_ = c.Mff_.inverse();
    c.gains_ = gains;
    c.a_L_ = p.a_L;
    c.a_R_ = p.a_R;
    c.g_ = p.g;
    return c;
}

V2 PIController::feedforward(const V2& r) const {
    if (!(r(0) > 0.0 && r(1) > 0.0))
        throw DomainError("PI feedforward: reference components must be > 0");
    return Mff_inv_ * V2(a_L_ * std::sqrt(2.0 * g_ * r(0)), a_R_ * std::sqrt(2.0 * g_ * r(1)));
}

V2 PIController::integrator_for(const V2& u, const V2& r) const {
    const M2& ki = gains_.ki;
    if (std::abs(ki(0, 0)) < 1e-300 || std::abs(ki(1, 1)) < 1e-300)
        throw SolveError("PI controller: zero integral gain, cannot place integrator");
    V2 diff = u - feedforward(r);
    return V2(diff(0) / ki(0, 0), diff(1) / ki(1, 1));
}

}  // namespace ztk

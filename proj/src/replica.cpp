#include "ztk/detect/replica.hpp"

#include <algorithm>

#include "ztk/sim/rk4.hpp"

namespace ztk {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Replica::Replica(const NormalFormPlant& nominal, const PIController& ctrl,
                 const OperatingPoint& op, double level_floor)
    : model_(nominal), ctrl_(ctrl), level_floor_(level_floor) {
    if (!(level_floor_ > 0.0)) throw ConfigError("replica: level floor must be > 0");
    // Start at the copy's own operating point; the defender cannot read the
    // plant's internal state, and the startup transient decays on its own.
    st_.z_mp = op.z_star_n;
    st_.x_mp = op.x_star;
    st_.s_mc = op.c_star_n;
}

V2 Replica::sanitize(const V2& y) const {
    return V2(std::max(y(0), level_floor_), std::max(y(1), level_floor_));
}

V2 Replica::u_mc(const V2& y) const {
    return ctrl_.output(st_.s_mc, st_.x_mp, sanitize(y));
}

void Replica::advance(const V2& y, double t, double dt) {
    const V2 yc = sanitize(y);
    auto field = [&](double, const Vec6& s) {
        const V2 z = s.segment<2>(0), x = s.segment<2>(2), c = s.segment<2>(4);
        const V2 u = ctrl_.output(c, x, yc);
        bool cl = false;
        Vec6 d;
        d.segment<2>(0) = model_.H_clamped(z, x, &cl);
        d.segment<2>(2) = model_.F_clamped(z, x, &cl) + model_.G(u);
        d.segment<2>(4) = yc - x;
        if (cl) clamped_ = true;
        return d;
    };
    Vec6 s0;
    s0 << st_.z_mp, st_.x_mp, st_.s_mc;
    const Vec6 s1 = rk4_step(field, t, s0, dt);
    st_.z_mp = s1.segment<2>(0);
    st_.x_mp = s1.segment<2>(2);
    st_.s_mc = s1.segment<2>(4);
}

}  // namespace ztk

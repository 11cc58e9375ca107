#pragma once
#include <Eigen/Core>
#include <cmath>
#include <utility>

#include "ztk/sim/errors.hpp"

namespace ztk {

namespace detail {
inline bool finite_state(double v) { return std::isfinite(v); }
template <typename Derived>
inline bool finite_state(const Eigen::MatrixBase<Derived>& v) {
    return v.allFinite();
}
}  // namespace detail

// Classical fourth-order Runge-Kutta step. State may be a double or any Eigen
// vector; f(t, x) returns the derivative. Every stage and the result are
// checked for NaN/Inf so a square-root domain violation upstream surfaces with
// a time stamp instead of propagating silently.
template <typename State, typename F>
State rk4_step(F&& f, double t, const State& x, double dt) {
    const State k1 = f(t, x);
    if (!detail::finite_state(k1)) throw NonFiniteState(t, "rk4 stage 1");
    const State k2 = f(t + 0.5 * dt, State(x + 0.5 * dt * k1));
    if (!detail::finite_state(k2)) throw NonFiniteState(t, "rk4 stage 2");
    const State k3 = f(t + 0.5 * dt, State(x + 0.5 * dt * k2));
    if (!detail::finite_state(k3)) throw NonFiniteState(t, "rk4 stage 3");
    const State k4 = f(t + dt, State(x + dt * k3));
    if (!detail::finite_state(k4)) throw NonFiniteState(t, "rk4 stage 4");
    State out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!detail::finite_state(out)) throw NonFiniteState(t, "rk4 result");
    return out;
}

}  // namespace ztk

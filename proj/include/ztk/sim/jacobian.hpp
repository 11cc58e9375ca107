#pragma once
#include <Eigen/Core>
#include <functional>

#include "ztk/sim/errors.hpp"

namespace ztk {

// Central-difference Jacobian: entry (i,j) = (g_i(w + h e_j) - g_i(w - h e_j)) / (2h).
// Probe points that leave g's domain surface as DomainError from g itself.
inline Eigen::MatrixXd finite_diff_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& g,
    const Eigen::VectorXd& w, double h) {
    if (!(h > 0.0)) throw ConfigError("finite_diff_jacobian: h must be > 0");
    Eigen::VectorXd gp, gm;
    Eigen::MatrixXd J;
    for (int j = 0; j < w.size(); ++j) {
        Eigen::VectorXd wp = w, wm = w;
        wp(j) += h;
        wm(j) -= h;
        gp = g(wp);
        gm = g(wm);
        if (J.size() == 0) J.resize(gp.size(), w.size());
        J.col(j) = (gp - gm) / (2.0 * h);
    }
    if (!J.allFinite()) throw NonFiniteState(0.0, "finite_diff_jacobian");
    return J;
}

// Step size used throughout for numeric Jacobians of the recovery map.
inline double jacobian_step(const Eigen::VectorXd& w) {
    return 1e-6 * std::max(1.0, w.cwiseAbs().maxCoeff());
}

}  // namespace ztk

// End-to-end checks of the shipped scenarios. Each numbered line states one
// requirement with its measured values; the process exits nonzero if any line
// reads FAIL. Pass the presets directory as argv[1].
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "ztk/attack/attack.hpp"
#include "ztk/attack/stealth.hpp"
#include "ztk/harness/presets.hpp"
#include "ztk/harness/scenario.hpp"
#include "ztk/plant/operating_point.hpp"
#include "ztk/recover/recovery.hpp"
#include "ztk/sim/jacobian.hpp"
#include "ztk/sim/rk4.hpp"

using ztk::V2;

namespace {

bool g_all_ok = true;

void line(int num, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", num, what.c_str());
    std::fflush(stdout);
    if (!ok) g_all_ok = false;
}

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("none"); }

std::string csv_of(const ztk::Trajectory& t) {
    std::ostringstream os;
    t.write_csv(os);
    return os.str();
}

// pre-onset stretches of >= hold consecutive statistic exceedances: each one
// would have latched the flag had the detector been armed
int64_t would_be_flags(const ztk::Trajectory& traj, double tau, int hold, double t_on) {
    const auto& t = traj.col(0);
    const auto& st = traj.col("r_stat");
    int64_t runs = 0;
    int streak = 0;
    for (size_t k = 0; k < t.size(); ++k) {
        if (t[k] >= t_on - 1e-12) break;
        if (st[k] > tau) {
            if (++streak == hold) ++runs;
        } else {
            streak = 0;
        }
    }
    return runs;
}

double rk4_halving_ratio() {
    auto f = [](double, const Eigen::Vector2d& x) { return Eigen::Vector2d(-x(1), x(0)); };
    auto run = [&](double dt) {
        Eigen::Vector2d x(1.0, 0.0);
        const int n = static_cast<int>(std::llround(1.0 / dt));
        for (int k = 0; k < n; ++k) x = ztk::rk4_step(f, k * dt, x, dt);
        return (x - Eigen::Vector2d(std::cos(1.0), std::sin(1.0))).norm();
    };
    return run(0.05) / run(0.025);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const std::string dir = ztk::find_presets_dir(argc > 1 ? argv[1] : "");
        ztk::ScenarioConfig cfg_a = ztk::load_preset("scenario-a", dir);
        ztk::ScenarioConfig cfg_b = ztk::load_preset("scenario-b", dir);
        ztk::ScenarioConfig cfg_c = ztk::load_preset("scenario-c", dir);
        for (ztk::ScenarioConfig* c : {&cfg_a, &cfg_b, &cfg_c})
            c->outputs = ztk::OutputSpec{false, false, false};

        auto res_a = ztk::run_scenario(cfg_a);
        auto res_b = ztk::run_scenario(cfg_b);
        auto res_c = ztk::run_scenario(cfg_c);

        // shared bench objects for the direct identity checks
        const ztk::NormalFormPlant plant =
            ztk::NormalFormPlant::make(cfg_a.plant.resolve(cfg_a.gravity));
        const ztk::NormalFormPlant nominal =
            ztk::NormalFormPlant::make(cfg_a.nominal.resolve(cfg_a.gravity));
        const ztk::PIController ctrl = ztk::PIController::make(cfg_a.plant.resolve(cfg_a.gravity));
        const ztk::PIController ctrl_n =
            ztk::PIController::make(cfg_a.nominal.resolve(cfg_a.gravity));
        const ztk::OperatingPoint op = ztk::solve_operating_point(
            plant, nominal, ctrl, ctrl_n, cfg_a.reference.at(cfg_a.attack.t_on));

        // ---- 1: fast detection, tiny post-recovery ratio, hard drain undefended
        {
            const auto& m = res_a.metrics;
            const double z_ref = op.z_star.cwiseAbs().maxCoeff();
            const bool det_ok = m.detection_time && *m.detection_time <= 0.1 + 1e-9;
            const bool gam_ok = m.gamma && *m.gamma <= 0.01;
            const bool drain_ok =
                m.diag.drain_deviation && *m.diag.drain_deviation >= 0.5 * z_ref;
            line(1, det_ok && gam_ok && drain_ok,
                 "constant setpoint: detection_time=" + fmt(m.detection_time) +
                     " (<=0.1), gamma=" + fmt(m.gamma) + " (<=0.01), undefended drain=" +
                     fmt(m.diag.drain_deviation) + " (>=" + fmt(0.5 * z_ref) + ")");
        }

        // ---- 2: noisy steps: detect within 1 s, gamma <= 0.02, no early flags
        {
            const auto& m = res_b.metrics;
            int64_t fp = -1;
            if (m.diag.threshold)
                fp = would_be_flags(res_b.primary().traj, *m.diag.threshold,
                                    cfg_b.detector.hold_count, cfg_b.attack.t_on);
            const bool det_ok = m.detection_time && *m.detection_time <= 1.0 + 1e-9;
            const bool gam_ok = m.gamma && *m.gamma <= 0.02;
            const bool fp_ok = fp == 0;
            line(2, det_ok && gam_ok && fp_ok,
                 "noisy steps: detection_time=" + fmt(m.detection_time) +
                     " (<=1), gamma=" + fmt(m.gamma) + " (<=0.02), pre-onset flags=" +
                     std::to_string(fp) + " (=0)");
        }

        // ---- 3: sinusoid: gamma <= 0.02 and tracking within 2x the clean run
        {
            const auto& m = res_c.metrics;
            const bool gam_ok = m.gamma && *m.gamma <= 0.02;
            const bool trk_ok = m.diag.tracking_ratio && *m.diag.tracking_ratio <= 2.0;
            line(3, gam_ok && trk_ok,
                 "sinusoid: gamma=" + fmt(m.gamma) + " (<=0.02), tracking_ratio=" +
                     fmt(m.diag.tracking_ratio) + " (<=2)");
        }

        // ---- 4: residual health: quiet without attack, tracks injection with one
        {
            double rq[3];
            int i = 0;
            for (const ztk::ScenarioConfig* c : {&cfg_a, &cfg_b, &cfg_c}) {
                ztk::ScenarioConfig off = *c;
                off.attack.enabled = false;
                rq[i++] = ztk::run_scenario(off).metrics.residual_steady_norm;
            }
            const bool quiet_ok = rq[0] < 1e-2 && rq[1] < 1e-2 && rq[2] < 1e-2;
            const auto ratio = res_a.metrics.diag.r_minus_alpha_ratio;
            const bool conv_ok = ratio && *ratio < 0.05;
            line(4, quiet_ok && conv_ok,
                 "attack-free residual peaks=" + fmt(rq[0]) + "/" + fmt(rq[1]) + "/" +
                     fmt(rq[2]) + " (<0.01 each), undefended settled |r-injection|/peak=" +
                     fmt(ratio) + " (<0.05)");
        }

        // ---- 5: estimator stays bounded and converges to the injected signal
        {
            const auto& d = res_a.metrics.diag;
            const double bound = d.alpha_peak ? 2.0 * *d.alpha_peak + 1.0 : 1.0;
            const bool bounded_ok = d.zr_minus_alpha_max && *d.zr_minus_alpha_max < bound;
            const bool conv_ok = d.zr_minus_alpha_ratio && *d.zr_minus_alpha_ratio < 0.05;
            line(5, bounded_ok && conv_ok,
                 "estimator |zr-injection|: whole-window max=" + fmt(d.zr_minus_alpha_max) +
                     " (<" + fmt(bound) + "), settled/peak=" + fmt(d.zr_minus_alpha_ratio) +
                     " (<0.05)");
        }

        // ---- 6: injection identities and stealth against a direction probe
        {
            ztk::AttackConfig id = cfg_a.attack;
            id.delta0 = V2::Zero();
            ztk::AttackGenerator atk0(nominal, op, id);
            const double a0 = atk0.alpha(id.t_on).cwiseAbs().maxCoeff();

            ztk::AttackGenerator atk(nominal, op, cfg_a.attack);
            const double outside =
                std::max(atk.alpha(cfg_a.attack.t_on - 0.01).cwiseAbs().maxCoeff(),
                         atk.alpha(cfg_a.attack.t_off + 0.01).cwiseAbs().maxCoeff());

            // Concealment is a property of the injection on the model it was
            // derived from: there the masked injection must be invisible next
            // to an equal-norm random-direction one. On the mismatched plant
            // the leak through the parameter gap is an outcome the scenario
            // criteria already quantify; it is reported here as a diagnostic.
            ztk::ScenarioConfig design_cfg = cfg_a;
            design_cfg.plant.preset = "nominal";  // plant matches the design model
            design_cfg.recovery.enabled = false;
            auto clean_d = ztk::run_single(design_cfg, ztk::RunKind::Clean);
            auto covert_d = ztk::run_single(design_cfg, ztk::RunKind::Attack);
            auto probed_d = ztk::run_single(design_cfg, ztk::RunKind::Probe);
            const auto dev_cd = ztk::output_deviation(
                covert_d.traj, clean_d.traj, {"x1", "x2"}, cfg_a.attack.t_on,
                cfg_a.attack.t_off);
            const auto dev_pd = ztk::output_deviation(
                probed_d.traj, clean_d.traj, {"x1", "x2"}, cfg_a.attack.t_on,
                cfg_a.attack.t_off);
            const double stealth = ztk::stealth_factor(dev_pd, dev_cd);

            ztk::ScenarioConfig probe_cfg = cfg_a;
            probe_cfg.recovery.enabled = false;
            auto clean = ztk::run_single(probe_cfg, ztk::RunKind::Clean);
            auto covert = ztk::run_single(probe_cfg, ztk::RunKind::Attack);
            auto probed = ztk::run_single(probe_cfg, ztk::RunKind::Probe);
            const auto dev_c = ztk::output_deviation(
                covert.traj, clean.traj, {"x1", "x2"}, cfg_a.attack.t_on,
                cfg_a.attack.t_off);
            const auto dev_p = ztk::output_deviation(
                probed.traj, clean.traj, {"x1", "x2"}, cfg_a.attack.t_on,
                cfg_a.attack.t_off);

            line(6, a0 <= 1e-12 && outside == 0.0 && stealth >= 5.0,
                 "on-balance injection=" + fmt(a0) + " (<=1e-12), outside window=" +
                     fmt(outside) + " (=0), probe/covert visibility on the design "
                     "model=" + fmt(stealth) + " (>=5; covert moved outputs " +
                     fmt(dev_cd.max_abs_dev) + ", probe " + fmt(dev_pd.max_abs_dev) +
                     "; with parameter mismatch the leak shows: covert " +
                     fmt(dev_c.max_abs_dev) + " vs probe " + fmt(dev_p.max_abs_dev) +
                     ", ratio " + fmt(dev_p.max_abs_dev / dev_c.max_abs_dev) + ")");
        }

        // ---- 7: numerics: integrator order, jacobian, coordinates, balance
        {
            const double ratio = rk4_halving_ratio();
            const bool rk_ok = ratio > 13.0 && ratio < 19.0;

            const V2 zp = op.z_star + V2(0.5, 0.5);
            const V2 xp = op.x_star;
            auto hmap = [&](const Eigen::VectorXd& zv) {
                Eigen::VectorXd out(2);
                out = plant.H(V2(zv(0), zv(1)), xp);
                return out;
            };
            Eigen::VectorXd z0 = zp;
            const Eigen::MatrixXd Jfd = ztk::finite_diff_jacobian(hmap, z0, 1e-6);
            const double r1 = plant.rad1(zp, xp), r2 = plant.rad2(zp, xp);
            Eigen::Matrix2d Ja;
            Ja << -plant.kappa1() / (2.0 * std::sqrt(r1)),
                -plant.T2() * plant.kappa2() / (2.0 * std::sqrt(r2)),
                -plant.T1() * plant.kappa1() / (2.0 * std::sqrt(r1)),
                -plant.kappa2() / (2.0 * std::sqrt(r2));
            double jac_err = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    jac_err = std::max(jac_err, std::abs(Ja(i, j) - Jfd(i, j)) /
                                                    std::max(std::abs(Ja(i, j)), 1e-9));
            const bool jac_ok = jac_err <= 1e-6;

            const ztk::FourTankParams pa = cfg_a.plant.resolve(cfg_a.gravity);
            std::mt19937_64 eng(2025);
            auto unif = [&](double lo, double hi) {
                return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
            };
            double coord_err = 0.0;
            for (int trial = 0; trial < 100; ++trial) {
                std::array<double, 4> h{unif(0.5, 24.0), unif(0.5, 24.0), unif(0.5, 24.0),
                                        unif(0.5, 24.0)};
                V2 ua(unif(0.0, 10.0), unif(0.0, 10.0)), ub(unif(0.0, 10.0), unif(0.0, 10.0));
                auto da = ztk::four_tank_level_derivs(pa, h, ua);
                auto db = ztk::four_tank_level_derivs(pa, h, ub);
                coord_err = std::max(
                    {coord_err,
                     std::abs((da[2] - plant.T2() * da[1]) - (db[2] - plant.T2() * db[1])),
                     std::abs((da[3] - plant.T1() * da[0]) - (db[3] - plant.T1() * db[0]))});
            }
            const bool coord_ok = coord_err <= 1e-10;

            const double bal =
                std::max(plant.H(op.z_star, op.x_star).cwiseAbs().maxCoeff(),
                         (plant.F(op.z_star, op.x_star) + plant.G(op.u_c_star))
                             .cwiseAbs()
                             .maxCoeff());
            const bool bal_ok = bal <= 1e-6;

            line(7, rk_ok && jac_ok && coord_ok && bal_ok,
                 "step-halving ratio=" + fmt(ratio) + " (13..19), jacobian rel err=" +
                     fmt(jac_err) + " (<=1e-6), input leak into internal coords=" +
                     fmt(coord_err) + " (<=1e-10), steady-state residual=" + fmt(bal) +
                     " (<=1e-6)");
        }

        // ---- 8: reruns are byte-identical
        {
            auto res_a2 = ztk::run_scenario(cfg_a);
            auto res_b2 = ztk::run_scenario(cfg_b);
            const bool same_a =
                csv_of(res_a.primary().traj) == csv_of(res_a2.primary().traj) &&
                csv_of(res_a.clean->traj) == csv_of(res_a2.clean->traj) &&
                csv_of(res_a.attacked->traj) == csv_of(res_a2.attacked->traj) &&
                ztk::metrics_to_json(res_a.metrics).dump() ==
                    ztk::metrics_to_json(res_a2.metrics).dump();
            const bool same_b =
                csv_of(res_b.primary().traj) == csv_of(res_b2.primary().traj) &&
                ztk::metrics_to_json(res_b.metrics).dump() ==
                    ztk::metrics_to_json(res_b2.metrics).dump();
            line(8, same_a && same_b,
                 std::string("rerun comparison: constant-setpoint run ") +
                     (same_a ? "identical" : "differs") + ", noisy-steps run " +
                     (same_b ? "identical" : "differs"));
        }
    } catch (const std::exception& e) {
        std::printf("FAIL harness error: %s\n", e.what());
        return 2;
    }
    return g_all_ok ? 0 : 1;
}

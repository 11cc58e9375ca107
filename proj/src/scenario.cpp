#include "ztk/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "ztk/attack/attack.hpp"
#include "ztk/detect/detector.hpp"
#include "ztk/detect/replica.hpp"
#include "ztk/harness/svg.hpp"
#include "ztk/plant/operating_point.hpp"
#include "ztk/recover/recovery.hpp"
#include "ztk/sim/rk4.hpp"
#include "ztk/sim/rng.hpp"

namespace ztk {

namespace {

const std::vector<std::string> kColumns = {
    "t",    "ref1", "ref2", "x1",     "x2",     "y1",     "y2",
    "z1",   "z2",   "u_c1", "u_c2",   "u_mc1",  "u_mc2",  "u_p1",
    "u_p2", "alpha1", "alpha2", "r1", "r2",     "r_norm", "r_stat",
    "flag", "zr1",  "zr2",  "w1",     "w2",     "engaged"};

// max_i |a_i(t) - b_i(t)| over the window, for two pairs of columns
double window_gap(const Trajectory& traj, const char* a1, const char* a2,
                  const char* b1, const char* b2, double lo, double hi) {
    const auto& t = traj.col(0);
    const auto& ca1 = traj.col(a1);
    const auto& ca2 = traj.col(a2);
    const auto& cb1 = traj.col(b1);
    const auto& cb2 = traj.col(b2);
    double m = 0.0;
    for (size_t k = 0; k < t.size(); ++k) {
        if (t[k] < lo - 1e-12 || t[k] > hi + 1e-12) continue;
        m = std::max(m, std::abs(ca1[k] - cb1[k]));
        m = std::max(m, std::abs(ca2[k] - cb2[k]));
    }
    return m;
}

double window_max(const Trajectory& traj, const char* col, double lo, double hi) {
    const auto& t = traj.col(0);
    const auto& c = traj.col(col);
    double m = 0.0;
    for (size_t k = 0; k < t.size(); ++k) {
        if (t[k] < lo - 1e-12 || t[k] > hi + 1e-12) continue;
        m = std::max(m, std::abs(c[k]));
    }
    return m;
}

std::optional<double> finite_opt(double v) {
    if (std::isfinite(v)) return v;
    return std::nullopt;
}

}  // namespace

const RunResult& ScenarioResult::primary() const {
    if (recovered) return *recovered;
    if (attacked) return *attacked;
    if (clean) return *clean;
    throw SolveError("scenario result holds no runs");
}

RunResult run_single(const ScenarioConfig& cfg, RunKind kind) {
    cfg.validate();
    const TimeGrid grid = cfg.grid.grid();
    const FourTankParams pa = cfg.plant.resolve(cfg.gravity);
    const FourTankParams pn = cfg.nominal.resolve(cfg.gravity);
    const NormalFormPlant plant = NormalFormPlant::make(pa);
    const NormalFormPlant nom = NormalFormPlant::make(pn);
    const PIController ctrl = PIController::make(pa);
    const PIController ctrl_n = PIController::make(pn);

    // Startup equilibrium (initial condition) and, if the reference differs
    // there, the equilibrium at the injection onset, which anchors the
    // attacker and the estimator.
    const V2 ref0 = cfg.reference.at(grid.t0);
    const V2 ref_on = cfg.reference.at(cfg.attack.t_on);
    const OperatingPoint op0 = solve_operating_point(plant, nom, ctrl, ctrl_n, ref0);
    const OperatingPoint op_on = ((ref_on - ref0).cwiseAbs().maxCoeff() < 1e-12)
                                     ? op0
                                     : solve_operating_point(plant, nom, ctrl, ctrl_n, ref_on);

    const bool attack_on = (kind != RunKind::Clean) && cfg.attack.enabled;
    const bool recovery_on = (kind == RunKind::Recovered) && cfg.recovery.enabled;

    AttackConfig acfg = cfg.attack;
    if (kind == RunKind::Probe) acfg.mode = AttackConfig::Mode::RandomDirection;
    std::optional<AttackGenerator> attacker;
    if (attack_on) attacker.emplace(nom, op_on, acfg);

    Replica replica(nom, ctrl_n, op0);
    Detector detector(cfg.detector, grid.dt, cfg.attack.t_on);
    std::optional<Recovery> recovery;
    if (recovery_on) recovery.emplace(nom, op_on, cfg.recovery);

    const bool gaussian = cfg.noise.type == NoiseSpec::Type::Gaussian;
    std::optional<GaussianRng> rng;
    if (gaussian) rng.emplace(cfg.noise.seed);
    const double noise_sd = gaussian ? std::sqrt(cfg.noise.variance) : 0.0;

    V2 z = op0.z_star, x = op0.x_star, c = op0.c_star;
    // The monitor re-runs the plant-side control law from signals it owns
    // (reference, measured output, the shared gains, the model-side
    // feedforward); its integrator copy starts where the real one does.
    V2 c_mon = op0.c_star;
    bool plant_clamped = false;

    Trajectory traj(grid, kColumns);
    for (int64_t k = 0; k <= grid.n_steps(); ++k) {
        const double t = grid.t(k);
        const V2 rv = cfg.reference.at(t);
        V2 y = x;
        if (gaussian) {
            const auto [n1, n2] = rng->normal_pair();
            y += noise_sd * V2(n1, n2);
        }
        const V2 u_c = ctrl.output(c, y, rv);
        const V2 alpha = attacker ? attacker->alpha(t) : V2(0.0, 0.0);
        const V2 u_mc = replica.u_mc(y);
        const V2 zr = recovery ? recovery->z_r() : V2(0.0, 0.0);
        const V2 u_p = u_c + alpha - zr;
        const V2 r_raw = u_p - u_mc;
        // Feedback terms of the clean-loop mismatch that the monitor can
        // compute exactly; what is left after subtracting them is the
        // actuation-trim mismatch plus anything injected on the input path.
        const V2 feedthrough = ctrl_n.output(c_mon, y, rv) - u_mc;
        const ResidualSample rs =
            detector.update(t, r_raw, feedthrough, cfg.reference.level(t));
        if (rs.flagged && recovery && !recovery->engaged()) recovery->engage(t);

        traj.push_row({t, rv(0), rv(1), x(0), x(1), y(0), y(1), z(0), z(1),
                       u_c(0), u_c(1), u_mc(0), u_mc(1), u_p(0), u_p(1),
                       alpha(0), alpha(1), rs.r(0), rs.r(1), rs.norm, rs.stat,
                       rs.flagged ? 1.0 : 0.0, zr(0), zr(1),
                       recovery ? recovery->w()(0) : 0.0,
                       recovery ? recovery->w()(1) : 0.0,
                       (recovery && recovery->engaged()) ? 1.0 : 0.0});
        if (k == grid.n_steps()) break;

        {  // plant step under the held input
            Eigen::Vector4d s;
            s << z, x;
            auto field = [&](double, const Eigen::Vector4d& s4) {
                const V2 zz = s4.segment<2>(0), xx = s4.segment<2>(2);
                bool cl = false;
                Eigen::Vector4d d;
                d.segment<2>(0) = plant.H_clamped(zz, xx, &cl);
                d.segment<2>(2) = plant.F_clamped(zz, xx, &cl) + plant.G(u_p);
                if (cl) plant_clamped = true;
                return d;
            };
            const Eigen::Vector4d s1 = rk4_step(field, t, s, grid.dt);
            z = s1.segment<2>(0);
            x = s1.segment<2>(2);
            // volumes cannot go negative: floor the levels (lower tanks are x,
            // upper tanks are the radicands)
            for (int i = 0; i < 2; ++i)
                if (x(i) < 0.0) {
                    x(i) = 0.0;
                    plant_clamped = true;
                }
            const double z1f = -plant.T2() * x(1), z2f = -plant.T1() * x(0);
            if (z(0) < z1f) {
                z(0) = z1f;
                plant_clamped = true;
            }
            if (z(1) < z2f) {
                z(1) = z2f;
                plant_clamped = true;
            }
        }
        c += grid.dt * (rv - y);  // exact integral of the held sample
        c_mon += grid.dt * (rv - y);
        replica.advance(y, t, grid.dt);
        if (attacker) attacker->advance(t, grid.dt);
        if (recovery) recovery->advance(rs.r, t, grid.dt);
    }

    RunResult out;
    out.traj = std::move(traj);
    if (detector.flagged()) out.flag_time = detector.flag_time();
    out.threshold = finite_opt(detector.threshold());
    out.attack_clamped = attacker && attacker->clamped();
    out.replica_clamped = replica.clamped();
    out.plant_clamped = plant_clamped;
    out.singular_skips = recovery ? recovery->singular_skips() : 0;
    return out;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    ScenarioResult res;
    res.cfg = cfg;
    res.clean = run_single(cfg, RunKind::Clean);
    if (cfg.attack.enabled) {
        res.attacked = run_single(cfg, RunKind::Attack);
        if (cfg.recovery.enabled) res.recovered = run_single(cfg, RunKind::Recovered);
    }

    MetricsReport m;
    m.seed = (cfg.noise.type == NoiseSpec::Type::Gaussian) ? cfg.noise.seed : 0;
    m.dt = cfg.grid.dt;
    m.config_hash = cfg.config_hash();

    const RunResult& prim = res.primary();
    const double t_on = cfg.attack.t_on, t_off = cfg.attack.t_off;
    const double cal_lo = t_on - cfg.detector.calibration_window;

    m.residual_steady_norm =
        window_max(prim.traj, "r_norm", cal_lo, t_on - cfg.grid.dt / 2);
    m.max_output_deviation =
        window_gap(prim.traj, "x1", "x2", "ref1", "ref2", t_on, t_off);
    if (prim.flag_time) m.detection_time = *prim.flag_time - t_on;

    m.diag.threshold = prim.threshold;
    m.diag.flag_time = prim.flag_time;
    m.diag.attack_clamped = prim.attack_clamped;
    m.diag.replica_clamped = prim.replica_clamped;
    m.diag.plant_clamped = prim.plant_clamped;
    m.diag.singular_skips = prim.singular_skips;

    if (prim.threshold) {  // would-be exceedances before the arm instant
        const auto& t = prim.traj.col(0);
        const auto& st = prim.traj.col("r_stat");
        int64_t fp = 0;
        for (size_t k = 0; k < t.size(); ++k)
            if (t[k] < t_on - 1e-12 && st[k] > *prim.threshold) ++fp;
        m.diag.false_positives_pre_arm = fp;
    }

    if (res.clean) {
        const double clean_err =
            window_gap(res.clean->traj, "x1", "x2", "ref1", "ref2", t_on, t_off);
        m.diag.clean_tracking_error = clean_err;
        m.diag.tracking_ratio = m.max_output_deviation / std::max(clean_err, 1e-12);
    }

    if (res.attacked && res.clean) {
        double drain = 0.0;
        const auto& t = res.attacked->traj.col(0);
        const auto& az1 = res.attacked->traj.col("z1");
        const auto& az2 = res.attacked->traj.col("z2");
        const auto& cz1 = res.clean->traj.col("z1");
        const auto& cz2 = res.clean->traj.col("z2");
        for (size_t k = 0; k < t.size(); ++k) {
            if (t[k] < t_on - 1e-12 || t[k] > t_off + 1e-12) continue;
            drain = std::max({drain, std::abs(az1[k] - cz1[k]), std::abs(az2[k] - cz2[k])});
        }
        m.diag.drain_deviation = drain;

        const double a_peak = std::max(window_max(res.attacked->traj, "alpha1", t_on, t_off),
                                       window_max(res.attacked->traj, "alpha2", t_on, t_off));
        m.diag.alpha_peak = a_peak;
        const double late_lo = t_on + 50.0;
        if (late_lo < t_off) {
            const double gap = window_gap(res.attacked->traj, "r1", "r2", "alpha1",
                                          "alpha2", late_lo, t_off);
            m.diag.r_minus_alpha_late = gap;
            if (a_peak > 1e-12) m.diag.r_minus_alpha_ratio = gap / a_peak;
        }
        if (res.recovered) {
            const Trajectory& tr = res.recovered->traj;
            m.diag.zr_minus_alpha_max =
                window_gap(tr, "zr1", "zr2", "alpha1", "alpha2", t_on, t_off);
            if (late_lo < t_off) {
                const double gap =
                    window_gap(tr, "zr1", "zr2", "alpha1", "alpha2", late_lo, t_off);
                m.diag.zr_minus_alpha_late = gap;
                if (a_peak > 1e-12) m.diag.zr_minus_alpha_ratio = gap / a_peak;
            }
            m.gamma = gamma_index(tr, res.attacked->traj, res.clean->traj, t_on, t_off);
        }
    }

    res.metrics = m;
    return res;
}

void emit_outputs(const ScenarioResult& res, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    const Trajectory& traj = res.primary().traj;
    const OutputSpec& o = res.cfg.outputs;

    if (o.csv) {
        const std::string p = out_dir + "/trajectory.csv";
        std::ofstream f(p);
        if (!f) throw IoError("cannot write " + p);
        traj.write_csv(f);
        if (!f) throw IoError("failed while writing " + p);
    }
    if (o.metrics) {
        const std::string p = out_dir + "/metrics.json";
        std::ofstream f(p);
        if (!f) throw IoError("cannot write " + p);
        f << metrics_to_json(res.metrics).dump(2) << "\n";
        if (!f) throw IoError("failed while writing " + p);
    }
    if (!o.svg) return;

    const auto& t = traj.col(0);
    {
        std::vector<SvgSeries> s{{"x1", &t, &traj.col("x1")},
                                 {"x2", &t, &traj.col("x2")},
                                 {"ref1", &t, &traj.col("ref1"), true},
                                 {"ref2", &t, &traj.col("ref2"), true}};
        write_svg_plot(out_dir + "/outputs.svg", "outputs vs reference", "t [s]", s);
    }
    {
        std::vector<SvgSeries> s{{"||r||", &t, &traj.col("r_norm")},
                                 {"statistic", &t, &traj.col("r_stat")}};
        std::vector<double> tt, tau;
        if (res.primary().threshold) {
            tt = {t.front(), t.back()};
            tau = {*res.primary().threshold, *res.primary().threshold};
            s.push_back({"threshold", &tt, &tau, true});
        }
        write_svg_plot(out_dir + "/residuals.svg", "residual evaluation", "t [s]", s);
    }
    {
        std::vector<SvgSeries> s;
        auto add = [&](const std::optional<RunResult>& r, const char* tag) {
            if (!r) return;
            s.push_back({std::string("z1 ") + tag, &r->traj.col(0), &r->traj.col("z1")});
            s.push_back({std::string("z2 ") + tag, &r->traj.col(0), &r->traj.col("z2")});
        };
        add(res.clean, "clean");
        add(res.attacked, "attacked");
        add(res.recovered, "recovered");
        write_svg_plot(out_dir + "/zero_dynamics.svg", "internal coordinates", "t [s]", s);
    }
    {
        std::vector<SvgSeries> s{{"alpha1", &t, &traj.col("alpha1"), true},
                                 {"alpha2", &t, &traj.col("alpha2"), true},
                                 {"zr1", &t, &traj.col("zr1")},
                                 {"zr2", &t, &traj.col("zr2")}};
        write_svg_plot(out_dir + "/recovery.svg", "recovery signal vs injection", "t [s]", s);
    }
}

}  // namespace ztk

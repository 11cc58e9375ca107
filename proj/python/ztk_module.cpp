// Python bindings for the zero-dynamics attack testbed.
//
// The surface mirrors the CLI: configs travel as plain dicts (the same JSON
// shape the preset files use), results come back as dicts of numpy arrays
// plus the metrics document. Heavy work runs with the GIL released.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "ztk/harness/metrics.hpp"
#include "ztk/harness/presets.hpp"
#include "ztk/harness/scenario.hpp"
#include "ztk/plant/operating_point.hpp"
#include "ztk/plant/pi_controller.hpp"
#include "ztk/sim/errors.hpp"

namespace py = pybind11;

namespace {

constexpr const char* kVersion = "1.0.0";

// Config documents are small; round-tripping through the stdlib json module
// keeps the dict representation byte-compatible with the files on disk.
py::object json_to_py(const ztk::Json& j) {
    return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

ztk::Json py_to_json(const py::handle& obj) {
    const py::object s = py::module_::import("json").attr("dumps")(obj);
    return ztk::Json::parse(py::cast<std::string>(s));
}

// Accepts a config dict, a path to a JSON file, or a preset name resolved
// against `presets_dir` (or the usual search order when that is empty).
ztk::ScenarioConfig resolve_config(const py::object& obj, const std::string& presets_dir) {
    if (py::isinstance<py::str>(obj)) {
        const std::string text = py::cast<std::string>(obj);
        const bool looks_like_path =
            text.find('/') != std::string::npos ||
            (text.size() > 5 && text.compare(text.size() - 5, 5, ".json") == 0);
        if (looks_like_path) {
            return ztk::ScenarioConfig::from_file(text);
        }
        return ztk::load_preset(text, ztk::find_presets_dir(presets_dir));
    }
    return ztk::ScenarioConfig::from_json(py_to_json(obj));
}

py::dict trajectory_to_py(const ztk::Trajectory& traj) {
    py::dict out;
    const auto n = static_cast<py::ssize_t>(traj.samples());
    for (int i = 0; i < traj.cols(); ++i) {
        py::array_t<double> arr(n);
        auto* dst = arr.mutable_data();
        const auto& src = traj.col(i);
        std::copy(src.begin(), src.end(), dst);
        out[py::str(traj.names()[static_cast<size_t>(i)])] = std::move(arr);
    }
    return out;
}

py::object opt_to_py(const std::optional<double>& v) {
    if (!v) return py::none();
    return py::float_(*v);
}

py::dict run_to_py(const ztk::RunResult& r) {
    py::dict out;
    out["trajectory"] = trajectory_to_py(r.traj);
    out["flag_time"] = opt_to_py(r.flag_time);
    out["threshold"] = opt_to_py(r.threshold);
    out["attack_clamped"] = r.attack_clamped;
    out["replica_clamped"] = r.replica_clamped;
    out["plant_clamped"] = r.plant_clamped;
    out["singular_skips"] = r.singular_skips;
    return out;
}

py::dict scenario_to_py(const ztk::ScenarioResult& res) {
    py::dict out;
    out["config"] = json_to_py(res.cfg.to_json());
    out["config_hash"] = res.cfg.config_hash();
    out["metrics"] = json_to_py(ztk::metrics_to_json(res.metrics));
    out["clean"] = res.clean ? py::object(run_to_py(*res.clean)) : py::none();
    out["attacked"] = res.attacked ? py::object(run_to_py(*res.attacked)) : py::none();
    out["recovered"] = res.recovered ? py::object(run_to_py(*res.recovered)) : py::none();
    return out;
}

py::tuple v2_tuple(const ztk::V2& v) { return py::make_tuple(v(0), v(1)); }

}  // namespace

PYBIND11_MODULE(_ztk, m) {
    m.doc() = "simulation toolkit for zero-dynamics attack detection and recovery";
    m.attr("__version__") = kVersion;

    // Configuration errors become ValueError; everything else the toolkit
    // throws on purpose becomes RuntimeError with the original message.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ztk::ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ztk::SimError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def("find_presets_dir", &ztk::find_presets_dir, py::arg("dir") = std::string(),
          "Locate the shipped scenario directory (argument, ZTK_PRESETS_DIR, ./presets).");

    m.def(
        "list_presets",
        [](const std::string& dir) { return ztk::list_presets(ztk::find_presets_dir(dir)); },
        py::arg("dir") = std::string(), "Names of the shipped scenario files, sorted.");

    m.def(
        "load_preset",
        [](const std::string& name, const std::string& dir) {
            return json_to_py(ztk::load_preset(name, ztk::find_presets_dir(dir)).to_json());
        },
        py::arg("name"), py::arg("dir") = std::string(),
        "Load a shipped scenario and return its canonical config dict.");

    m.def(
        "config_hash",
        [](const py::object& config, const std::string& presets_dir) {
            return resolve_config(config, presets_dir).config_hash();
        },
        py::arg("config"), py::arg("presets_dir") = std::string(),
        "Hash of the canonical form of a config (dict, file path, or preset name).");

    m.def(
        "run_scenario",
        [](const py::object& config, const py::object& out_dir, uint64_t seed, bool override_seed,
           double dt, bool override_dt, const std::string& presets_dir) {
            ztk::ScenarioConfig cfg = resolve_config(config, presets_dir);
            if (override_seed) {
                cfg.noise.seed = seed;
                cfg.attack.direction_seed = seed;
            }
            if (override_dt) cfg.grid.dt = dt;
            cfg.validate();
            std::optional<std::string> dir;
            if (!out_dir.is_none()) dir = py::cast<std::string>(out_dir);
            std::optional<ztk::ScenarioResult> res;
            {
                py::gil_scoped_release release;
                res = ztk::run_scenario(cfg);
                if (dir) ztk::emit_outputs(*res, *dir);
            }
            return scenario_to_py(*res);
        },
        py::arg("config"), py::arg("out_dir") = py::none(), py::arg("seed") = 0,
        py::arg("override_seed") = false, py::arg("dt") = 0.0, py::arg("override_dt") = false,
        py::arg("presets_dir") = std::string(),
        "Run the clean / attacked / recovered set for one scenario. Returns a dict with\n"
        "the canonical config, its hash, the metrics document, and one entry per run\n"
        "holding the trajectory as {column: numpy array}. When out_dir is given the\n"
        "same files the CLI writes (CSV, metrics JSON, SVG plots) are emitted there.");

    m.def(
        "run_single",
        [](const py::object& config, const std::string& kind, const std::string& presets_dir) {
            ztk::ScenarioConfig cfg = resolve_config(config, presets_dir);
            cfg.validate();
            ztk::RunKind k;
            if (kind == "clean") k = ztk::RunKind::Clean;
            else if (kind == "attack") k = ztk::RunKind::Attack;
            else if (kind == "recovered") k = ztk::RunKind::Recovered;
            else if (kind == "probe") k = ztk::RunKind::Probe;
            else throw ztk::ConfigError("unknown run kind '" + kind +
                                        "' (clean | attack | recovered | probe)");
            std::optional<ztk::RunResult> r;
            {
                py::gil_scoped_release release;
                r = ztk::run_single(cfg, k);
            }
            return run_to_py(*r);
        },
        py::arg("config"), py::arg("kind"), py::arg("presets_dir") = std::string(),
        "Run one loop variant: 'clean', 'attack', 'recovered', or 'probe'.");

    m.def(
        "operating_point",
        [](const py::object& config, const std::string& presets_dir) {
            const ztk::ScenarioConfig cfg = resolve_config(config, presets_dir);
            cfg.validate();
            const ztk::FourTankParams pa = cfg.plant.resolve(cfg.gravity);
            const ztk::FourTankParams pn = cfg.nominal.resolve(cfg.gravity);
            const ztk::NormalFormPlant plant = ztk::NormalFormPlant::make(pa);
            const ztk::NormalFormPlant nom = ztk::NormalFormPlant::make(pn);
            const ztk::PIController ctrl = ztk::PIController::make(pa);
            const ztk::PIController ctrl_n = ztk::PIController::make(pn);
            const ztk::V2 ref = cfg.reference.at(cfg.grid.t0);
            ztk::OperatingPoint op;
            {
                py::gil_scoped_release release;
                op = ztk::solve_operating_point(plant, nom, ctrl, ctrl_n, ref);
            }
            py::dict out;
            out["x_star"] = v2_tuple(op.x_star);
            out["z_star"] = v2_tuple(op.z_star);
            out["z_star_n"] = v2_tuple(op.z_star_n);
            out["u_c_star"] = v2_tuple(op.u_c_star);
            out["u_mc_star"] = v2_tuple(op.u_mc_star);
            out["c_star"] = v2_tuple(op.c_star);
            out["c_star_n"] = v2_tuple(op.c_star_n);
            return out;
        },
        py::arg("config"), py::arg("presets_dir") = std::string(),
        "Attack-free steady state of both loops at the initial reference.\n"
        "Returns the plant and model-copy internal states, the steady pump\n"
        "voltages, and the integrator states that realize them.");
}

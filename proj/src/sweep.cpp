#include "ztk/harness/sweep.hpp"

#include <sstream>

#include "ztk/harness/scenario.hpp"
#include "ztk/sim/trajectory.hpp"  // format_g9

namespace ztk {

namespace {

std::string to_pointer(const std::string& dotted) {
    if (dotted.empty()) throw ConfigError("sweep: empty parameter path");
    std::string p = "/";
    for (char c : dotted) p += (c == '.') ? '/' : c;
    return p;
}

Json parse_value(const std::string& s) {
    try {
        return Json::parse(s);
    } catch (const nlohmann::json::parse_error&) {
        return Json(s);  // bare word: treat as a string (e.g. a mode name)
    }
}

std::string cell(const std::optional<double>& v) {
    return v ? format_g9(*v) : std::string();
}

}  // namespace

SweepResult run_sweep(const Json& base, const std::string& param,
                      const std::vector<std::string>& values) {
    if (!base.is_object()) throw ConfigError("sweep: base config must be a JSON object");
    const Json::json_pointer ptr(to_pointer(param));

    SweepResult out;
    out.param = param;
    for (const std::string& vs : values) {
        SweepRow row;
        row.value = vs;
        try {
            Json patched = base;
            patched[ptr] = parse_value(vs);
            ScenarioConfig cfg = ScenarioConfig::from_json(patched);
            cfg.outputs = OutputSpec{false, false, false};  // metrics only
            row.metrics = run_scenario(cfg).metrics;
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_sweep_csv(const SweepResult& res, std::ostream& os) {
    os << "param,value,status,detection_time,gamma,max_output_deviation,"
          "residual_steady_norm,error\n";
    for (const auto& r : res.rows) {
        os << res.param << "," << r.value << ",";
        if (r.ok) {
            os << "ok," << cell(r.metrics.detection_time) << "," << cell(r.metrics.gamma)
               << "," << format_g9(r.metrics.max_output_deviation) << ","
               << format_g9(r.metrics.residual_steady_norm) << ",";
        } else {
            std::string msg = r.error;
            for (char& c : msg)
                if (c == ',' || c == '\n') c = ';';
            os << "error,,,,," << msg;
        }
        os << "\n";
    }
}

}  // namespace ztk

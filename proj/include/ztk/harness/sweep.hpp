#pragma once
#include <ostream>
#include <string>
#include <vector>

#include "ztk/harness/config.hpp"
#include "ztk/harness/metrics.hpp"

namespace ztk {

// One scenario per value: the base config with a single field replaced.
// Bad values are reported in their row; the remaining values still run.
struct SweepRow {
    std::string value;
    bool ok = false;
    MetricsReport metrics;  // valid when ok
    std::string error;      // set when !ok
};

struct SweepResult {
    std::string param;  // dotted path, e.g. recovery.lambda
    std::vector<SweepRow> rows;
};

// `values` entries are parsed as JSON scalars (bare words fall back to
// strings, so modes can be swept too).
SweepResult run_sweep(const Json& base, const std::string& param,
                      const std::vector<std::string>& values);

void write_sweep_csv(const SweepResult& res, std::ostream& os);

}  // namespace ztk

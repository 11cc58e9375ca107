#pragma once
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ztk/sim/errors.hpp"
#include "ztk/sim/grid.hpp"

namespace ztk {

// Columnar recording of one run. Column 0 is always "t". Every push_row adds
// exactly one sample per column, so all columns stay aligned with the grid.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(TimeGrid grid, std::vector<std::string> names);

    const TimeGrid& grid() const { return grid_; }
    const std::vector<std::string>& names() const { return names_; }
    int64_t samples() const { return n_rows_; }
    int cols() const { return static_cast<int>(names_.size()); }

    void push_row(const std::vector<double>& row);

    int index(const std::string& name) const;          // throws ConfigError if absent
    const std::vector<double>& col(int i) const { return data_[static_cast<size_t>(i)]; }
    const std::vector<double>& col(const std::string& name) const { return col(index(name)); }
    double at(int64_t row, int i) const { return data_[static_cast<size_t>(i)][static_cast<size_t>(row)]; }

    // CSV: header row, then one row per sample, %.9g everywhere.
    void write_csv(std::ostream& os) const;

    // Same time axis, sample for sample (used before cross-run comparisons).
    static void require_same_grid(const Trajectory& a, const Trajectory& b);

private:
    TimeGrid grid_;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> data_;
    int64_t n_rows_ = 0;
};

std::string format_g9(double v);  // %.9g, shared by CSV and the sweep table

}  // namespace ztk

#include "ztk/sim/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace ztk {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

Trajectory::Trajectory(TimeGrid grid, std::vector<std::string> names)
    : grid_(grid), names_(std::move(names)) {
    if (names_.empty() || names_[0] != "t")
        throw ConfigError("trajectory: first column must be 't'");
    std::set<std::string> uniq(names_.begin(), names_.end());
    if (uniq.size() != names_.size())
        throw ConfigError("trajectory: column names must be unique");
    data_.resize(names_.size());
    for (auto& c : data_) c.reserve(static_cast<size_t>(grid_.n_samples()));
}

void Trajectory::push_row(const std::vector<double>& row) {
    if (row.size() != names_.size())
        throw ConfigError("trajectory: row width does not match column count");
    for (size_t i = 0; i < row.size(); ++i) {
        if (!std::isfinite(row[i]))
            throw NonFiniteState(row[0], "column '" + names_[i] + "'");
        data_[i].push_back(row[i]);
    }
    ++n_rows_;
}

int Trajectory::index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw ConfigError("trajectory: no column named '" + name + "'");
}

void Trajectory::write_csv(std::ostream& os) const {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (i) os << ',';
        os << names_[i];
    }
    os << '\n';
    for (int64_t r = 0; r < n_rows_; ++r) {
        for (size_t i = 0; i < names_.size(); ++i) {
            if (i) os << ',';
            os << format_g9(data_[i][static_cast<size_t>(r)]);
        }
        os << '\n';
    }
}

void Trajectory::require_same_grid(const Trajectory& a, const Trajectory& b) {
    if (a.samples() != b.samples())
        throw GridMismatch("trajectories have different sample counts");
    const auto& ta = a.col(0);
    const auto& tb = b.col(0);
    for (size_t i = 0; i < ta.size(); ++i)
        if (ta[i] != tb[i]) throw GridMismatch("trajectory time axes differ");
}

}  // namespace ztk

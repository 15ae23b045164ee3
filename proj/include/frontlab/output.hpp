#pragma once

// Trajectory serialization: CSV with full 17-significant-digit doubles
// (locale-independent, round-trip exact) and a waterfall SVG of consecutive
// front positions. Output bytes depend only on the trajectory contents.

#include "frontlab/dynamics.hpp"

#include <string>
#include <vector>

namespace frontlab {

/// Header "t,x_0,...,x_{N-1}" then one row per snapshot with nodal values.
/// Throws std::invalid_argument on an empty trajectory (no file is created).
void write_trajectory_csv(const Trajectory<double>& traj, const std::string& path);

struct TrajectoryTable {
    std::vector<double> times;
    std::vector<Eigen::ArrayXd> rows;  // nodal values per snapshot
};

/// Parses a file produced by write_trajectory_csv.
TrajectoryTable read_trajectory_csv(const std::string& path);

/// Stacked line plot, one polyline per snapshot, offset vertically by
/// snapshot index (earliest at the top).
void write_waterfall_svg(const Trajectory<double>& traj, const std::string& path);

/// Shortest-exact decimal rendering helpers used by all writers.
std::string format_double(double value, int significant_digits = 17);

}  // namespace frontlab

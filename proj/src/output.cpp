#include "frontlab/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace frontlab {

std::string format_double(double value, int significant_digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                                   significant_digits);
    return std::string(buf, res.ptr);
}

namespace {

void require_nonempty(const Trajectory<double>& traj, const char* what) {
    if (traj.snapshots.empty() || traj.times.empty())
        throw std::invalid_argument(std::string(what) + ": trajectory is empty");
}

}  // namespace

void write_trajectory_csv(const Trajectory<double>& traj, const std::string& path) {
    require_nonempty(traj, "write_trajectory_csv");
    const Eigen::Index n = traj.snapshots.front().grid().n_modes;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    std::string row;
    row.reserve(32 * static_cast<std::size_t>(n));
    row = "t";
    for (Eigen::Index j = 0; j < n; ++j) {
        row += ",x_";
        row += std::to_string(j);
    }
    row += '\n';
    out << row;
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        row = format_double(traj.times[s]);
        const Eigen::ArrayXd nodal = to_physical(traj.snapshots[s]);
        for (Eigen::Index j = 0; j < n; ++j) {
            row += ',';
            row += format_double(nodal[j]);
        }
        row += '\n';
        out << row;
    }
    if (!out) throw std::runtime_error("write_trajectory_csv: write failed for " + path);
}

TrajectoryTable read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_trajectory_csv: cannot open " + path);
    TrajectoryTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_trajectory_csv: missing header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> values;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            double v = 0.0;
            const auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc())
                throw std::runtime_error("read_trajectory_csv: malformed number in " + path);
            values.push_back(v);
            p = res.ptr;
            if (p < end && *p == ',') ++p;
        }
        if (values.size() < 2)
            throw std::runtime_error("read_trajectory_csv: short row in " + path);
        table.times.push_back(values.front());
        Eigen::ArrayXd row(static_cast<Eigen::Index>(values.size()) - 1);
        for (std::size_t j = 1; j < values.size(); ++j)
            row[static_cast<Eigen::Index>(j - 1)] = values[j];
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_waterfall_svg(const Trajectory<double>& traj, const std::string& path) {
    require_nonempty(traj, "write_waterfall_svg");
    const Eigen::Index n = traj.snapshots.front().grid().n_modes;
    const std::size_t rows = traj.snapshots.size();

    // Rows show the shape of each front; the (large) drift offset is removed
    // per row, the stacking itself conveys the time ordering.
    std::vector<Eigen::ArrayXd> nodal;
    nodal.reserve(rows);
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (const auto& snap : traj.snapshots) {
        nodal.push_back(to_physical(snap) - snap.mean());
        lo = std::min(lo, nodal.back().minCoeff());
        hi = std::max(hi, nodal.back().maxCoeff());
    }
    const double span = std::max(hi - lo, 1e-300);

    const double margin = 24.0;
    const double plot_w = 860.0;
    const double row_step = 8.0;
    const double amp = 3.0 * row_step / span;  // neighbouring rows may overlap
    const double height = 2.0 * margin + row_step * static_cast<double>(rows) + 3.0 * row_step;
    const double width = 2.0 * margin + plot_w;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width, 6)
        << "\" height=\"" << format_double(height, 6) << "\" viewBox=\"0 0 "
        << format_double(width, 6) << ' ' << format_double(height, 6) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<g fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"0.8\">\n";
    for (std::size_t s = 0; s < rows; ++s) {
        const double top = margin + row_step * static_cast<double>(s);
        svg << "<polyline points=\"";
        for (Eigen::Index j = 0; j < n; ++j) {
            const double x = margin + plot_w * static_cast<double>(j) / static_cast<double>(n - 1);
            const double y = top + (hi - nodal[s][j]) * amp;
            if (j) svg << ' ';
            svg << format_double(x, 8) << ',' << format_double(y, 8);
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_waterfall_svg: cannot open " + path);
    out << svg.str();
    if (!out) throw std::runtime_error("write_waterfall_svg: write failed for " + path);
}

}  // namespace frontlab

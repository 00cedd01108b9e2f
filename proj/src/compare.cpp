#include "cascade/compare.hpp"

#include "cascade/errors.hpp"
#include "cascade/kernels.hpp"

#include <json.hpp>

#include <fstream>

namespace cascade {

CurveStats curve_stats(const Trajectory& traj) {
    if (traj.points() == 0)
        throw ValidationError("curve_stats: empty trajectory");
    CurveStats stats;
    double cum_max = 0.0;
    for (std::size_t t = 0; t < traj.points(); ++t)
        cum_max = std::max(cum_max, traj.i[t] + traj.r[t]);
    if (cum_max > 0.0) {
        for (std::size_t t = 0; t < traj.points(); ++t) {
            if (traj.i[t] + traj.r[t] >= 0.5 * cum_max) {
                stats.t_half = traj.grid[t];
                break;
            }
        }
    } else {
        stats.t_half = traj.grid.front();
    }
    std::size_t peak = 0;
    for (std::size_t t = 1; t < traj.points(); ++t)
        if (traj.i[t] > traj.i[peak]) peak = t;
    stats.peak_time = traj.grid[peak];
    stats.peak_value = traj.i[peak];
    return stats;
}

ComparisonReport compare_trajectories(const Trajectory& a, const Trajectory& b) {
    if (a.grid.size() != b.grid.size() || a.grid != b.grid)
        throw ValidationError("compare_trajectories: grids differ");
    ComparisonReport report;
    report.sup_dist = kernels::sup_diff(a.i, b.i);
    report.l2_dist = kernels::l2_diff(a.i, b.i);
    report.a = curve_stats(a);
    report.b = curve_stats(b);
    return report;
}

void write_report_json(const ComparisonReport& report, std::ostream& os) {
    nlohmann::json doc{
        {"sup_dist", report.sup_dist},
        {"l2_dist", report.l2_dist},
        {"t_half", {{"a", report.a.t_half}, {"b", report.b.t_half}}},
        {"peak_time", {{"a", report.a.peak_time}, {"b", report.b.peak_time}}},
        {"peak_value", {{"a", report.a.peak_value}, {"b", report.b.peak_value}}},
    };
    os << doc.dump(2) << '\n';
    if (!os)
        throw ValidationError("report json: write failed");
}

void write_report_json(const ComparisonReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw ValidationError("report json: cannot open " + path);
    write_report_json(report, os);
}

} // namespace cascade

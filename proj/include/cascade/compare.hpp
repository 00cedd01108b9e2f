#pragma once

// Discrepancy metrics between two trajectories on a common grid, quantifying
// what a side-by-side plot shows: distance between the aggregate infected
// curves, dissemination speed (t_half), and epidemic peak.

#include "cascade/trajectory.hpp"

#include <iosfwd>
#include <string>

namespace cascade {

struct CurveStats {
    // First time the cumulative infection i+r reaches half of its own
    // eventual maximum (0 when the curve never leaves 0).
    double t_half = 0.0;
    double peak_time = 0.0;  // argmax of i(t), first attained
    double peak_value = 0.0; // max of i(t)
};

struct ComparisonReport {
    double sup_dist = 0.0; // sup-norm distance between aggregate i(t) curves
    double l2_dist = 0.0;  // sqrt of summed squared differences
    CurveStats a;
    CurveStats b;
};

CurveStats curve_stats(const Trajectory& traj);

// Requires identical grids; distances are symmetric in (a, b).
ComparisonReport compare_trajectories(const Trajectory& a, const Trajectory& b);

void write_report_json(const ComparisonReport& report, std::ostream& os);
void write_report_json(const ComparisonReport& report, const std::string& path);

} // namespace cascade

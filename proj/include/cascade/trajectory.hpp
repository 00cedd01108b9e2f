#pragma once

// Time-gridded S/I/R curves, shared between the stochastic simulation, the
// ODE integrator, and the analytic solver so downstream tooling never cares
// about the source. Per-class values are fractions of ALL nodes; aggregates
// satisfy s = 1 - i - r.
//
// CSV schema: header "t,s,i,r" plus optional per-class columns "i_K_L,r_K_L"
// appended pairwise; values printed with 9 significant digits.

#include "cascade/degree_model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cascade {

struct Trajectory {
    std::vector<double> grid; // increasing, starts at 0

    std::vector<DegreeClass> classes; // sorted by (k,l)
    std::vector<double> class_frac;   // class mass (f or census/N) per class

    // Row-major [time][class].
    std::vector<double> i_class;
    std::vector<double> r_class;

    // Aggregates per grid point.
    std::vector<double> s, i, r;

    std::size_t points() const { return grid.size(); }
    std::size_t class_count() const { return classes.size(); }

    double& i_at(std::size_t t, std::size_t c) { return i_class[t * classes.size() + c]; }
    double& r_at(std::size_t t, std::size_t c) { return r_class[t * classes.size() + c]; }
    double i_at(std::size_t t, std::size_t c) const { return i_class[t * classes.size() + c]; }
    double r_at(std::size_t t, std::size_t c) const { return r_class[t * classes.size() + c]; }

    // Fills the aggregate vectors from the per-class data.
    void recompute_aggregates();
};

// Uniformly spaced grid over [0, t_max] with `points` >= 2 entries.
std::vector<double> uniform_grid(double t_max, std::size_t points);

void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                          bool per_class_columns);
void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          bool per_class_columns);

// Parses the shared schema; per-class columns are recovered when present.
Trajectory read_trajectory_csv(std::istream& is);
Trajectory read_trajectory_csv(const std::string& path);

} // namespace cascade

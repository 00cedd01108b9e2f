#pragma once

// Degree-stratified mean-field ODEs for the broadcast SIR process and their
// fixed-step RK4 integration. Two algebraically equivalent forms:
//
//   Absolute     di/dt = lambda*k*(f - i - r) * (sum l'*i') / (sum l'*f') - nu*i
//   Conditioned  di/dt = lambda*k*(1 - i - r) * (sum l'*f'*i') / (sum l'*f') - nu*i
//
// with dr/dt = nu*i in both. Absolute states are fractions of all nodes
// (i + r <= f per class); conditioned states are fractions within a class
// (i + r <= 1). Trajectories are always reported in the absolute
// convention so aggregates and CSV output mean the same thing everywhere.

#include "cascade/degree_model.hpp"
#include "cascade/epidemic_sim.hpp"
#include "cascade/trajectory.hpp"

#include <span>
#include <vector>

namespace cascade {

enum class MeanFieldForm { Absolute, Conditioned };

struct ClassState {
    JointDegreePmf pmf;
    std::vector<double> i; // indexed like pmf.support()
    std::vector<double> r;

    // Bounds check in the given convention; throws ValidationError.
    void validate(MeanFieldForm form) const;
};

// i = init_frac * f per class, r = 0 (the expectation of uniform seeding).
ClassState expected_seed_state(const JointDegreePmf& pmf, double init_frac);

// i taken from per-class fractions (e.g. realized simulation seeds), r = 0.
ClassState state_from_fractions(const JointDegreePmf& pmf,
                                std::span<const double> infected_frac);

// Componentwise scaling by the class masses; round-trips to ~1e-15.
ClassState absolute_to_conditional(const ClassState& state);
ClassState conditional_to_absolute(const ClassState& state);

// Time derivatives in the convention of `form`. Throws when the pmf has no
// out-edges (zero denominator).
void rhs(const ClassState& state, const EpidemicParams& params,
         MeanFieldForm form, std::span<double> di, std::span<double> dr);

// Classical RK4 with step dt (the last step before each grid point is
// shortened to land on it exactly). `initial` is absolute; the conditioned
// form integrates in its own coordinates and converts on output. Any
// admissible initial state integrates (the all-susceptible state is a fixed
// point). Roundoff excursions outside the admissible box up to 1e-9 are
// clamped, anything larger raises NumericError (step too large).
Trajectory integrate(const ClassState& initial, const EpidemicParams& params,
                     MeanFieldForm form, std::span<const double> grid, double dt);

} // namespace cascade

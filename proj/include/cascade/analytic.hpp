#pragma once

// Semi-analytic and closed-form solutions for the no-recovery case (nu = 0).
// With nu = 0 the per-class susceptible masses are coupled through powers of
// a single reference class: log-derivatives of f - i are proportional to the
// in-degree, so (f_kl - i_kl(t)) = c_kl * (f_ref - i_ref(t))^(k/k_ref) holds
// along the flow. That reduces the whole system to one scalar ODE for the
// reference class plus algebraic reconstruction. When the in-degree is a
// single value d, the out-degree-weighted infected fraction follows a
// logistic and every class has an explicit closed form.

#include "cascade/meanfield.hpp"

#include <span>

namespace cascade {

struct CouplingConstants {
    DegreeClass ref;          // reference class (k*, l*), k* >= 1
    std::size_t ref_index;    // position in the pmf support
    std::vector<double> c;    // c[j] = (f_j - i_j(0)) / base^(k_j/k*), base = f_ref - i_ref(0)
};

// Default reference: (1,1) when it carries mass and susceptible headroom;
// otherwise the lexicographically first class with k >= 1 and f - i(0) > 0.
DegreeClass default_reference(const ClassState& initial);

// Throws if ref is absent, k* < 1, or the reference class starts fully
// infected (degenerate base).
CouplingConstants coupling_constants(const ClassState& initial, DegreeClass ref);

// Integrates the scalar reference ODE (RK4, step dt) and reconstructs every
// class through the coupling relation. Requires params.nu == 0.
Trajectory solve_reference_ode(const ClassState& initial,
                               const EpidemicParams& params, DegreeClass ref,
                               std::span<const double> grid, double dt);

// Out-degree-weighted infected fraction sum_j l_j i_j / sum_j l_j f_j.
double theta_of(const ClassState& state);

struct LogisticTheta {
    double theta0 = 0.0; // in (0, 1]
    double rate = 0.0;   // lambda * d
};

// theta(t) = theta0 / (theta0 + (1 - theta0) * exp(-rate * t))
double theta_closed_form(const LogisticTheta& th, double t);

// Closed-form state at time t for a pmf whose in-degree is a single value d
// (all support points share k = d), nu = 0:
//   i_dl(t) = f_dl - (f_dl - i_dl(0)) / (1 - theta0 + theta0 * exp(lambda*d*t))
// with theta0 = theta_of(initial). The denominator grows with t, so every
// class fills up to its mass; at t = 0 the initial state is returned exactly.
ClassState closed_form_deterministic_indegree(const ClassState& initial,
                                              double lambda, double t);

} // namespace cascade

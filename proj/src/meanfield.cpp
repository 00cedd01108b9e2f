#include "cascade/meanfield.hpp"

#include "cascade/errors.hpp"
#include "cascade/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cascade {

namespace {

constexpr double kBoxTolerance = 1e-9;

void check_sizes(const ClassState& state) {
    if (state.i.size() != state.pmf.size() || state.r.size() != state.pmf.size())
        throw ValidationError("class state: vector sizes do not match pmf support");
}

} // namespace

void ClassState::validate(MeanFieldForm form) const {
    check_sizes(*this);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        const double cap =
            form == MeanFieldForm::Absolute ? pmf.support()[j].p : 1.0;
        if (!(i[j] >= 0.0) || !(r[j] >= 0.0) || i[j] + r[j] > cap + kBoxTolerance)
            throw ValidationError("class state: fractions outside [0, cap] at index " +
                                  std::to_string(j));
    }
}

ClassState expected_seed_state(const JointDegreePmf& pmf, double init_frac) {
    if (!(init_frac >= 0.0 && init_frac <= 1.0))
        throw ValidationError("expected_seed_state: init_frac must be in [0,1]");
    ClassState state{pmf, {}, {}};
    state.i.resize(pmf.size());
    state.r.assign(pmf.size(), 0.0);
    for (std::size_t j = 0; j < pmf.size(); ++j)
        state.i[j] = init_frac * pmf.support()[j].p;
    return state;
}

ClassState state_from_fractions(const JointDegreePmf& pmf,
                                std::span<const double> infected_frac) {
    if (infected_frac.size() != pmf.size())
        throw ValidationError("state_from_fractions: fraction vector size mismatch");
    ClassState state{pmf, {infected_frac.begin(), infected_frac.end()}, {}};
    state.r.assign(pmf.size(), 0.0);
    state.validate(MeanFieldForm::Absolute);
    return state;
}

ClassState absolute_to_conditional(const ClassState& state) {
    check_sizes(state);
    ClassState out = state;
    for (std::size_t j = 0; j < state.pmf.size(); ++j) {
        const double f = state.pmf.support()[j].p;
        out.i[j] = state.i[j] / f;
        out.r[j] = state.r[j] / f;
    }
    return out;
}

ClassState conditional_to_absolute(const ClassState& state) {
    check_sizes(state);
    ClassState out = state;
    for (std::size_t j = 0; j < state.pmf.size(); ++j) {
        const double f = state.pmf.support()[j].p;
        out.i[j] = state.i[j] * f;
        out.r[j] = state.r[j] * f;
    }
    return out;
}

namespace {

// Precomputed coefficient vectors for one integration.
struct System {
    std::vector<double> coeff;  // lambda * k_j
    std::vector<double> cap;    // f_j (absolute) or 1 (conditioned)
    std::vector<double> weight; // l_j (absolute) or l_j*f_j (conditioned)
    double mean_out = 0.0;      // sum l_j*f_j
    double nu = 0.0;

    System(const JointDegreePmf& pmf, const EpidemicParams& params,
           MeanFieldForm form) {
        const std::size_t m = pmf.size();
        coeff.resize(m);
        cap.resize(m);
        weight.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            const auto& pt = pmf.support()[j];
            coeff[j] = params.lambda * pt.cls.k;
            const double lf = pt.cls.l * pt.p;
            mean_out += lf;
            if (form == MeanFieldForm::Absolute) {
                cap[j] = pt.p;
                weight[j] = pt.cls.l;
            } else {
                cap[j] = 1.0;
                weight[j] = lf;
            }
        }
        if (!(mean_out > 0.0))
            throw ValidationError("mean-field rhs: pmf has no out-edges "
                                  "(zero mean out-degree denominator)");
        nu = params.nu;
    }

    // y and dy are [i..., r...] of length 2m.
    void operator()(std::span<const double> y, std::span<double> dy) const {
        const std::size_t m = coeff.size();
        const double theta =
            kernels::dot(weight, y.first(m)) / mean_out;
        kernels::sir_rhs(dy.first(m), dy.subspan(m), coeff, cap, y.first(m),
                         y.subspan(m), theta, nu);
    }
};

} // namespace

void rhs(const ClassState& state, const EpidemicParams& params,
         MeanFieldForm form, std::span<double> di, std::span<double> dr) {
    check_sizes(state);
    if (di.size() != state.pmf.size() || dr.size() != state.pmf.size())
        throw ValidationError("rhs: output spans sized incorrectly");
    const System sys(state.pmf, params, form);
    std::vector<double> y(2 * state.pmf.size());
    std::copy(state.i.begin(), state.i.end(), y.begin());
    std::copy(state.r.begin(), state.r.end(), y.begin() + state.pmf.size());
    std::vector<double> dy(y.size());
    sys(y, dy);
    std::copy(dy.begin(), dy.begin() + di.size(), di.begin());
    std::copy(dy.begin() + di.size(), dy.end(), dr.begin());
}

namespace {

// Clamp roundoff excursions; reject anything beyond tolerance. Also checks
// the per-step monotonicity of s (non-increasing) and r (non-decreasing).
void enforce_box(std::span<double> y, std::span<const double> y_prev,
                 std::span<const double> cap, double t) {
    const std::size_t m = cap.size();
    for (std::size_t j = 0; j < 2 * m; ++j) {
        if (!std::isfinite(y[j]))
            throw NumericError("integrate: non-finite state at t=" + std::to_string(t));
        if (y[j] < 0.0) {
            if (y[j] < -kBoxTolerance)
                throw NumericError("integrate: state " + std::to_string(y[j]) +
                                   " below 0 at t=" + std::to_string(t) +
                                   "; reduce dt");
            y[j] = 0.0;
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double over = y[j] + y[m + j] - cap[j];
        if (over > 0.0) {
            if (over > kBoxTolerance)
                throw NumericError("integrate: class " + std::to_string(j) +
                                   " exceeds its mass by " + std::to_string(over) +
                                   " at t=" + std::to_string(t) + "; reduce dt");
            y[j] = std::max(0.0, y[j] - over);
        }
        const double s_new = cap[j] - y[j] - y[m + j];
        const double s_old = cap[j] - y_prev[j] - y_prev[m + j];
        if (s_new > s_old + kBoxTolerance)
            throw NumericError("integrate: susceptible mass increased at t=" +
                               std::to_string(t));
        if (y[m + j] < y_prev[m + j] - kBoxTolerance)
            throw NumericError("integrate: recovered mass decreased at t=" +
                               std::to_string(t));
    }
}

} // namespace

Trajectory integrate(const ClassState& initial, const EpidemicParams& params,
                     MeanFieldForm form, std::span<const double> grid, double dt) {
    params.validate();
    if (!(dt > 0.0))
        throw ValidationError("integrate: dt must be > 0");
    if (grid.empty())
        throw ValidationError("integrate: empty output grid");
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (grid[j] < 0.0 || (j > 0 && grid[j] < grid[j - 1]))
            throw ValidationError("integrate: grid must be sorted and non-negative");
    initial.validate(MeanFieldForm::Absolute);

    const JointDegreePmf& pmf = initial.pmf;
    const std::size_t m = pmf.size();
    const System sys(pmf, params, form);

    const ClassState start = form == MeanFieldForm::Conditioned
                                 ? absolute_to_conditional(initial)
                                 : initial;
    std::vector<double> y(2 * m);
    std::copy(start.i.begin(), start.i.end(), y.begin());
    std::copy(start.r.begin(), start.r.end(), y.begin() + m);

    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.classes.reserve(m);
    traj.class_frac.reserve(m);
    for (const auto& pt : pmf.support()) {
        traj.classes.push_back(pt.cls);
        traj.class_frac.push_back(pt.p);
    }
    traj.i_class.resize(grid.size() * m);
    traj.r_class.resize(grid.size() * m);

    std::vector<double> k1(2 * m), k2(2 * m), k3(2 * m), k4(2 * m), tmp(2 * m),
        y_prev(2 * m);

    auto record = [&](std::size_t gi) {
        for (std::size_t j = 0; j < m; ++j) {
            const double scale =
                form == MeanFieldForm::Conditioned ? pmf.support()[j].p : 1.0;
            traj.i_at(gi, j) = y[j] * scale;
            traj.r_at(gi, j) = y[m + j] * scale;
        }
    };

    double t = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        while (t < grid[gi] - 1e-12 * std::max(1.0, grid[gi])) {
            const double h = std::min(dt, grid[gi] - t);
            y_prev = y;
            sys(y, k1);
            kernels::axpy_out(tmp, y, h / 2.0, k1);
            sys(tmp, k2);
            kernels::axpy_out(tmp, y, h / 2.0, k2);
            sys(tmp, k3);
            kernels::axpy_out(tmp, y, h, k3);
            sys(tmp, k4);
            kernels::rk4_combine(y, h / 6.0, k1, k2, k3, k4);
            t += h;
            enforce_box(y, y_prev, sys.cap, t);
        }
        t = grid[gi];
        record(gi);
    }

    traj.recompute_aggregates();
    return traj;
}

} // namespace cascade

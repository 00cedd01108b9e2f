#include "cascade/analytic.hpp"

#include "cascade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cascade {

DegreeClass default_reference(const ClassState& initial) {
    initial.validate(MeanFieldForm::Absolute);
    const auto idx = initial.pmf.index_of({1, 1});
    if (idx >= 0 && initial.pmf.support()[idx].p - initial.i[idx] > 0.0)
        return {1, 1};
    for (std::size_t j = 0; j < initial.pmf.size(); ++j) {
        const auto& pt = initial.pmf.support()[j];
        if (pt.cls.k >= 1 && pt.p - initial.i[j] > 0.0)
            return pt.cls;
    }
    throw ValidationError("default_reference: no class with k >= 1 and "
                          "remaining susceptible mass");
}

CouplingConstants coupling_constants(const ClassState& initial, DegreeClass ref) {
    initial.validate(MeanFieldForm::Absolute);
    const auto idx = initial.pmf.index_of(ref);
    if (idx < 0)
        throw ValidationError("coupling_constants: reference class not in support");
    if (ref.k < 1)
        throw ValidationError("coupling_constants: reference in-degree must be >= 1");
    const double base =
        initial.pmf.support()[idx].p - initial.i[static_cast<std::size_t>(idx)];
    if (!(base > 0.0))
        throw ValidationError("coupling_constants: reference class fully infected "
                              "at t=0 (degenerate base)");

    CouplingConstants cc;
    cc.ref = ref;
    cc.ref_index = static_cast<std::size_t>(idx);
    cc.c.resize(initial.pmf.size());
    for (std::size_t j = 0; j < initial.pmf.size(); ++j) {
        const auto& pt = initial.pmf.support()[j];
        const double expo = static_cast<double>(pt.cls.k) / ref.k;
        cc.c[j] = (pt.p - initial.i[j]) / std::pow(base, expo);
    }
    return cc;
}

double theta_of(const ClassState& state) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < state.pmf.size(); ++j) {
        const auto& pt = state.pmf.support()[j];
        num += pt.cls.l * state.i[j];
        den += pt.cls.l * pt.p;
    }
    if (!(den > 0.0))
        throw ValidationError("theta_of: pmf has no out-edges");
    return num / den;
}

Trajectory solve_reference_ode(const ClassState& initial,
                               const EpidemicParams& params, DegreeClass ref,
                               std::span<const double> grid, double dt) {
    params.validate();
    if (params.nu != 0.0)
        throw ValidationError("solve_reference_ode: requires nu = 0");
    if (!(dt > 0.0))
        throw ValidationError("solve_reference_ode: dt must be > 0");
    if (grid.empty())
        throw ValidationError("solve_reference_ode: empty output grid");
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (grid[j] < 0.0 || (j > 0 && grid[j] < grid[j - 1]))
            throw ValidationError("solve_reference_ode: grid must be sorted");

    for (double rv : initial.r)
        if (rv != 0.0)
            throw ValidationError("solve_reference_ode: initial recovered mass "
                                  "must be zero when nu = 0");

    const JointDegreePmf& pmf = initial.pmf;
    const std::size_t m = pmf.size();
    const CouplingConstants cc = coupling_constants(initial, ref);
    const double f_ref = pmf.support()[cc.ref_index].p;
    const double base0 = f_ref - initial.i[cc.ref_index];

    std::vector<double> lvec(m), expo(m), head0(m);
    double mean_out = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const auto& pt = pmf.support()[j];
        lvec[j] = pt.cls.l;
        expo[j] = static_cast<double>(pt.cls.k) / ref.k;
        head0[j] = pt.p - initial.i[j]; // susceptible headroom at t=0
        mean_out += pt.cls.l * pt.p;
    }
    if (!(mean_out > 0.0))
        throw ValidationError("solve_reference_ode: pmf has no out-edges");

    // Susceptible headroom of class j expressed through the reference:
    // head_j(x) = head0_j * ((f_ref - x)/base0)^expo_j. The ratio form keeps
    // t = 0 exact and avoids overflow for large exponents.
    auto head = [&](std::size_t j, double x) {
        const double ratio = std::max(0.0, (f_ref - x) / base0);
        return head0[j] * std::pow(ratio, expo[j]);
    };
    auto deriv = [&](double x) {
        double pressure = 0.0; // sum_j l_j * i_j(x)
        for (std::size_t j = 0; j < m; ++j)
            pressure += lvec[j] * (pmf.support()[j].p - head(j, x));
        return params.lambda * ref.k * (f_ref - x) * pressure / mean_out;
    };

    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.classes.reserve(m);
    traj.class_frac.reserve(m);
    for (const auto& pt : pmf.support()) {
        traj.classes.push_back(pt.cls);
        traj.class_frac.push_back(pt.p);
    }
    traj.i_class.resize(grid.size() * m);
    traj.r_class.assign(grid.size() * m, 0.0); // nu = 0

    double x = initial.i[cc.ref_index];
    double t = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        while (t < grid[gi] - 1e-12 * std::max(1.0, grid[gi])) {
            const double h = std::min(dt, grid[gi] - t);
            const double k1 = deriv(x);
            const double k2 = deriv(x + h / 2.0 * k1);
            const double k3 = deriv(x + h / 2.0 * k2);
            const double k4 = deriv(x + h * k3);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!std::isfinite(x))
                throw NumericError("solve_reference_ode: non-finite state at t=" +
                                   std::to_string(t + h));
            x = std::min(x, f_ref); // roundoff guard at the absorbing end
            t += h;
        }
        t = grid[gi];
        for (std::size_t j = 0; j < m; ++j)
            traj.i_at(gi, j) = pmf.support()[j].p - head(j, x);
    }

    traj.recompute_aggregates();
    return traj;
}

double theta_closed_form(const LogisticTheta& th, double t) {
    if (!(th.theta0 > 0.0 && th.theta0 <= 1.0))
        throw ValidationError("theta_closed_form: theta0 must be in (0,1]");
    return th.theta0 / (th.theta0 + (1.0 - th.theta0) * std::exp(-th.rate * t));
}

ClassState closed_form_deterministic_indegree(const ClassState& initial,
                                              double lambda, double t) {
    initial.validate(MeanFieldForm::Absolute);
    if (!(lambda > 0.0))
        throw ValidationError("closed form: lambda must be > 0");
    if (!(t >= 0.0))
        throw ValidationError("closed form: t must be >= 0");
    for (double rv : initial.r)
        if (rv != 0.0)
            throw ValidationError("closed form: initial recovered mass must be zero");
    const JointDegreePmf& pmf = initial.pmf;
    const int d = pmf.support().front().cls.k;
    for (const auto& pt : pmf.support())
        if (pt.cls.k != d)
            throw ValidationError("closed form: in-degree is not deterministic "
                                  "(saw k=" + std::to_string(pt.cls.k) + " and k=" +
                                  std::to_string(d) + ")");

    const double theta0 = theta_of(initial);
    // The denominator 1 - theta0 + theta0*exp(lambda*d*t) grows from 1, so
    // every class flows from i(0) toward its full mass. Rearranged as
    // i = i0 + (f - i0)*factor/(1 + factor) with factor = theta0*expm1(...):
    // exact at t = 0, monotone in t, and saturating cleanly at overflow.
    const double factor = theta0 * std::expm1(lambda * d * t);
    const double ratio = std::isfinite(factor) ? factor / (1.0 + factor) : 1.0;

    ClassState out{pmf, {}, {}};
    out.i.resize(pmf.size());
    out.r.assign(pmf.size(), 0.0);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        const double f = pmf.support()[j].p;
        out.i[j] = initial.i[j] + (f - initial.i[j]) * ratio;
    }
    return out;
}

} // namespace cascade

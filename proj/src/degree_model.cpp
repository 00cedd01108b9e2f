#include "cascade/degree_model.hpp"

#include "cascade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace cascade {

namespace {

constexpr double kMassTolerance = 1e-12;

} // namespace

JointDegreePmf JointDegreePmf::from_points(std::vector<Point> points) {
    if (points.empty())
        throw ValidationError("degree pmf: empty support");
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.cls < b.cls; });
    JointDegreePmf pmf;
    double total = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        const Point& pt = points[j];
        if (pt.cls.k < 0 || pt.cls.l < 0)
            throw ValidationError("degree pmf: negative degree in support");
        if (pt.cls.k == 0 && pt.cls.l == 0)
            throw ValidationError("degree pmf: (0,0) class not admissible");
        if (!(pt.p > 0.0))
            throw ValidationError("degree pmf: non-positive mass at (" +
                                  std::to_string(pt.cls.k) + "," +
                                  std::to_string(pt.cls.l) + ")");
        if (j > 0 && points[j - 1].cls == pt.cls)
            throw ValidationError("degree pmf: duplicate support point");
        total += pt.p;
        pmf.k_max_ = std::max(pmf.k_max_, pt.cls.k);
        pmf.l_max_ = std::max(pmf.l_max_, pt.cls.l);
    }
    if (std::fabs(total - 1.0) > kMassTolerance)
        throw ValidationError("degree pmf: masses sum to " + std::to_string(total));
    pmf.support_ = std::move(points);
    return pmf;
}

std::ptrdiff_t JointDegreePmf::index_of(DegreeClass cls) const {
    auto it = std::lower_bound(
        support_.begin(), support_.end(), cls,
        [](const Point& pt, const DegreeClass& c) { return pt.cls < c; });
    if (it == support_.end() || !(it->cls == cls))
        return -1;
    return it - support_.begin();
}

MarginalSpec MarginalSpec::deterministic(int value) {
    MarginalSpec s;
    s.kind = Kind::Deterministic;
    s.value = value;
    return s;
}

MarginalSpec MarginalSpec::uniform(int lo, int hi) {
    MarginalSpec s;
    s.kind = Kind::Uniform;
    s.lo = lo;
    s.hi = hi;
    return s;
}

MarginalSpec MarginalSpec::zipf(int lo, int hi, double exponent) {
    MarginalSpec s;
    s.kind = Kind::Zipf;
    s.lo = lo;
    s.hi = hi;
    s.exponent = exponent;
    return s;
}

std::int64_t DegreeSequence::in_sum() const {
    return std::accumulate(in_deg.begin(), in_deg.end(), std::int64_t{0});
}

std::int64_t DegreeSequence::out_sum() const {
    return std::accumulate(out_deg.begin(), out_deg.end(), std::int64_t{0});
}

std::vector<double> make_marginal_pmf(const MarginalSpec& spec) {
    switch (spec.kind) {
        case MarginalSpec::Kind::Deterministic: {
            if (spec.value < 0)
                throw ValidationError("deterministic degree must be >= 0");
            std::vector<double> p(spec.value + 1, 0.0);
            p[spec.value] = 1.0;
            return p;
        }
        case MarginalSpec::Kind::Uniform: {
            if (spec.lo < 0 || spec.hi < spec.lo)
                throw ValidationError("uniform degree range invalid");
            std::vector<double> p(spec.hi + 1, 0.0);
            const double mass = 1.0 / (spec.hi - spec.lo + 1);
            for (int d = spec.lo; d <= spec.hi; ++d)
                p[d] = mass;
            return p;
        }
        case MarginalSpec::Kind::Zipf: {
            if (spec.lo < 1)
                throw ValidationError("zipf range must start at >= 1");
            if (spec.hi < spec.lo)
                throw ValidationError("zipf degree range invalid");
            if (!(spec.exponent > 0.0))
                throw ValidationError("zipf exponent must be > 0");
            std::vector<double> p(spec.hi + 1, 0.0);
            double z = 0.0;
            for (int d = spec.lo; d <= spec.hi; ++d)
                z += std::pow(d, -spec.exponent);
            for (int d = spec.lo; d <= spec.hi; ++d)
                p[d] = std::pow(d, -spec.exponent) / z;
            return p;
        }
    }
    throw ValidationError("unknown marginal kind");
}

JointDegreePmf product_joint(const std::vector<double>& in_pmf,
                             const std::vector<double>& out_pmf) {
    double in_total = std::accumulate(in_pmf.begin(), in_pmf.end(), 0.0);
    double out_total = std::accumulate(out_pmf.begin(), out_pmf.end(), 0.0);
    if (std::fabs(in_total - 1.0) > kMassTolerance ||
        std::fabs(out_total - 1.0) > kMassTolerance)
        throw ValidationError("product_joint: marginals must be normalized");

    std::vector<JointDegreePmf::Point> points;
    double kept = 0.0;
    for (int k = 0; k < static_cast<int>(in_pmf.size()); ++k) {
        if (in_pmf[k] <= 0.0) continue;
        for (int l = 0; l < static_cast<int>(out_pmf.size()); ++l) {
            if (out_pmf[l] <= 0.0) continue;
            if (k == 0 && l == 0) continue; // excluded class
            const double p = in_pmf[k] * out_pmf[l];
            points.push_back({{k, l}, p});
            kept += p;
        }
    }
    if (points.empty())
        throw ValidationError("product_joint: all mass on the (0,0) class");
    for (auto& pt : points)
        pt.p /= kept;
    return JointDegreePmf::from_points(std::move(points));
}

Moments moments(const JointDegreePmf& pmf) {
    Moments m;
    double ek2 = 0.0, el2 = 0.0;
    for (const auto& pt : pmf.support()) {
        m.mean_in += pt.p * pt.cls.k;
        m.mean_out += pt.p * pt.cls.l;
        ek2 += pt.p * pt.cls.k * static_cast<double>(pt.cls.k);
        el2 += pt.p * pt.cls.l * static_cast<double>(pt.cls.l);
    }
    m.var_in = ek2 - m.mean_in * m.mean_in;
    m.var_out = el2 - m.mean_out * m.mean_out;
    return m;
}

DegreeSequence sample_degree_sequence(const JointDegreePmf& pmf, std::size_t n,
                                      std::uint64_t seed) {
    if (n == 0)
        throw ValidationError("sample_degree_sequence: n must be >= 1");
    std::vector<double> cdf(pmf.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        acc += pmf.support()[j].p;
        cdf[j] = acc;
    }
    cdf.back() = 1.0; // close the tail against roundoff

    Rng rng(seed);
    DegreeSequence seq;
    seq.in_deg.resize(n);
    seq.out_deg.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const double u = rng.next_unit();
        const std::size_t j =
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        seq.in_deg[v] = pmf.support()[j].cls.k;
        seq.out_deg[v] = pmf.support()[j].cls.l;
    }
    return seq;
}

DegreeSequence balance_stubs(DegreeSequence seq, std::uint64_t seed) {
    if (seq.size() == 0)
        throw ValidationError("balance_stubs: empty sequence");
    const std::int64_t in = seq.in_sum();
    const std::int64_t out = seq.out_sum();
    if (in == out)
        return seq;
    std::vector<int>& deficient = (in < out) ? seq.in_deg : seq.out_deg;
    std::int64_t deficit = std::llabs(in - out);
    Rng rng(seed);
    while (deficit-- > 0)
        deficient[rng.uniform_below(seq.size())] += 1;
    return seq;
}

JointDegreePmf empirical_pmf(const DegreeSequence& seq) {
    if (seq.size() == 0)
        throw ValidationError("empirical_pmf: empty sequence");
    std::map<DegreeClass, std::int64_t> census;
    for (std::size_t v = 0; v < seq.size(); ++v) {
        if (seq.in_deg[v] == 0 && seq.out_deg[v] == 0)
            throw ValidationError("empirical_pmf: sequence contains a (0,0) node");
        census[{seq.in_deg[v], seq.out_deg[v]}] += 1;
    }
    std::vector<JointDegreePmf::Point> points;
    points.reserve(census.size());
    const double n = static_cast<double>(seq.size());
    for (const auto& [cls, count] : census)
        points.push_back({cls, static_cast<double>(count) / n});
    return JointDegreePmf::from_points(std::move(points));
}

} // namespace cascade

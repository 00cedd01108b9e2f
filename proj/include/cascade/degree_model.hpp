#pragma once

// Joint in/out-degree distributions and degree sequences for directed
// configuration-model graphs: marginal families (deterministic, uniform,
// zipf), independent products, i.i.d. sequence sampling, and the stub-count
// balancing repair that makes a sequence realizable as a directed multigraph.

#include "cascade/rng.hpp"

#include <cstdint>
#include <vector>

namespace cascade {

struct DegreeClass {
    int k = 0; // in-degree
    int l = 0; // out-degree
    friend bool operator==(const DegreeClass&, const DegreeClass&) = default;
    friend auto operator<=>(const DegreeClass&, const DegreeClass&) = default;
};

// Probability mass function on degree classes. Support is sorted by (k,l),
// all masses positive, sums to 1 within 1e-12, and never contains (0,0).
class JointDegreePmf {
  public:
    struct Point {
        DegreeClass cls;
        double p = 0.0;
    };

    // Validates and normalizes ordering; throws ValidationError on violation.
    static JointDegreePmf from_points(std::vector<Point> points);

    const std::vector<Point>& support() const { return support_; }
    int k_max() const { return k_max_; }
    int l_max() const { return l_max_; }
    std::size_t size() const { return support_.size(); }

    // Index of a class in the support, or -1 if absent.
    std::ptrdiff_t index_of(DegreeClass cls) const;

  private:
    JointDegreePmf() = default;
    std::vector<Point> support_;
    int k_max_ = 0;
    int l_max_ = 0;
};

struct Moments {
    double mean_in = 0.0;
    double mean_out = 0.0;
    double var_in = 0.0;
    double var_out = 0.0;
};

struct MarginalSpec {
    enum class Kind { Deterministic, Uniform, Zipf };
    Kind kind = Kind::Deterministic;
    int value = 0;         // deterministic
    int lo = 0, hi = 0;    // uniform / zipf range
    double exponent = 1.0; // zipf: p(k) proportional to k^(-exponent)

    static MarginalSpec deterministic(int value);
    static MarginalSpec uniform(int lo, int hi);
    static MarginalSpec zipf(int lo, int hi, double exponent);
};

struct DegreeSequence {
    std::vector<int> in_deg;
    std::vector<int> out_deg; // same length as in_deg

    std::size_t size() const { return in_deg.size(); }
    std::int64_t in_sum() const;
    std::int64_t out_sum() const;
};

// Probability vector over degrees 0..hi for one marginal family; entry d is
// P(degree = d). Throws on empty ranges and on zipf with lo = 0.
std::vector<double> make_marginal_pmf(const MarginalSpec& spec);

// Independent product f(k,l) = p_in(k) * p_out(l). Any mass at (0,0) is
// dropped and the remainder renormalized; throws if nothing remains.
JointDegreePmf product_joint(const std::vector<double>& in_pmf,
                             const std::vector<double>& out_pmf);

Moments moments(const JointDegreePmf& pmf);

// n i.i.d. draws from the pmf; deterministic given seed. Not yet balanced.
DegreeSequence sample_degree_sequence(const JointDegreePmf& pmf, std::size_t n,
                                      std::uint64_t seed);

// Equalizes stub counts: the deficit |sum_in - sum_out| is added one unit at
// a time to uniformly chosen nodes (with replacement) on the smaller side.
DegreeSequence balance_stubs(DegreeSequence seq, std::uint64_t seed);

// Observed class frequencies, count/N. Throws if a (0,0) node is present.
JointDegreePmf empirical_pmf(const DegreeSequence& seq);

} // namespace cascade

// Scalar reference kernels. These define the semantics; vector variants are
// checked against them.

#include "kernels_impl.hpp"

#include <cmath>

namespace cascade::kernels::scalar {

namespace {

void axpy_out(double* y, const double* x, double a, const double* k, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        y[j] = x[j] + a * k[j];
}

void rk4_combine(double* y, double w, const double* k1, const double* k2,
                 const double* k3, const double* k4, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        y[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        s += a[j] * b[j];
    return s;
}

void sir_rhs(double* di, double* dr, const double* coeff, const double* cap,
             const double* iv, const double* rv, double theta, double nu,
             std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double susceptible = cap[j] - iv[j] - rv[j];
        di[j] = coeff[j] * theta * susceptible - nu * iv[j];
        dr[j] = nu * iv[j];
    }
}

double sup_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = std::fabs(a[j] - b[j]);
        if (d > m) m = d;
    }
    return m;
}

double l2_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

const KernelTable table = {axpy_out, rk4_combine, dot, sir_rhs, sup_diff, l2_diff};

} // namespace cascade::kernels::scalar

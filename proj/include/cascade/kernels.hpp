#pragma once

// Data-parallel double-precision kernels backing the ODE integrator and the
// trajectory comparison metrics. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant; the backend is picked
// once at startup from CPU capabilities (override with force() or the
// CASCADE_KERNELS environment variable, values "scalar" / "avx2").
//
// Vector variants may reassociate additions and contract multiply-adds, so
// results can differ from the scalar path in the last bits; the test suite
// pins the two paths together at tight relative tolerance.

#include <cstddef>
#include <span>

namespace cascade::kernels {

enum class Backend { Scalar, Avx2 };

Backend active();
bool supported(Backend b);
void force(Backend b); // throws ValidationError if unsupported on this CPU
const char* name(Backend b);

// y[j] = x[j] + a*k[j]
void axpy_out(std::span<double> y, std::span<const double> x, double a,
              std::span<const double> k);

// y[j] += w*(k1[j] + 2 k2[j] + 2 k3[j] + k4[j]); w is h/6 for an RK4 step.
void rk4_combine(std::span<double> y, double w, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4);

// sum_j a[j]*b[j]
double dot(std::span<const double> a, std::span<const double> b);

// Per-class SIR rates, one fused pass:
//   di[j] = coeff[j]*theta*(cap[j] - iv[j] - rv[j]) - nu*iv[j]
//   dr[j] = nu*iv[j]
// where coeff[j] is lambda*k_j and theta the normalized infection pressure.
void sir_rhs(std::span<double> di, std::span<double> dr,
             std::span<const double> coeff, std::span<const double> cap,
             std::span<const double> iv, std::span<const double> rv,
             double theta, double nu);

// max_j |a[j] - b[j]|
double sup_diff(std::span<const double> a, std::span<const double> b);

// sqrt(sum_j (a[j] - b[j])^2)
double l2_diff(std::span<const double> a, std::span<const double> b);

} // namespace cascade::kernels

// AVX2/FMA kernel variants, 4 doubles per lane with scalar remainder loops.
// Built with -mavx2 -mfma on x86-64; on other targets (or without those
// flags) this TU degrades to a stub and dispatch stays on the scalar path.

#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace cascade::kernels::avx2 {

namespace {

void axpy_out(double* y, const double* x, double a, const double* k, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d xv = _mm256_loadu_pd(x + j);
        const __m256d kv = _mm256_loadu_pd(k + j);
        _mm256_storeu_pd(y + j, _mm256_fmadd_pd(av, kv, xv));
    }
    for (; j < n; ++j)
        y[j] = x[j] + a * k[j];
}

void rk4_combine(double* y, double w, const double* k1, const double* k2,
                 const double* k3, const double* k4, std::size_t n) {
    const __m256d wv = _mm256_set1_pd(w);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_add_pd(_mm256_loadu_pd(k1 + j), _mm256_loadu_pd(k4 + j));
        acc = _mm256_fmadd_pd(two, _mm256_loadu_pd(k2 + j), acc);
        acc = _mm256_fmadd_pd(two, _mm256_loadu_pd(k3 + j), acc);
        const __m256d yv = _mm256_loadu_pd(y + j);
        _mm256_storeu_pd(y + j, _mm256_fmadd_pd(wv, acc, yv));
    }
    for (; j < n; ++j)
        y[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
}

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    return _mm_cvtsd_f64(s1);
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc);
    double s = hsum(acc);
    for (; j < n; ++j)
        s += a[j] * b[j];
    return s;
}

void sir_rhs(double* di, double* dr, const double* coeff, const double* cap,
             const double* iv, const double* rv, double theta, double nu,
             std::size_t n) {
    const __m256d tv = _mm256_set1_pd(theta);
    const __m256d nv = _mm256_set1_pd(nu);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d ivv = _mm256_loadu_pd(iv + j);
        const __m256d sus = _mm256_sub_pd(
            _mm256_sub_pd(_mm256_loadu_pd(cap + j), ivv), _mm256_loadu_pd(rv + j));
        const __m256d recov = _mm256_mul_pd(nv, ivv);
        const __m256d rate = _mm256_mul_pd(_mm256_loadu_pd(coeff + j), tv);
        _mm256_storeu_pd(di + j, _mm256_fmsub_pd(rate, sus, recov));
        _mm256_storeu_pd(dr + j, recov);
    }
    for (; j < n; ++j) {
        const double susceptible = cap[j] - iv[j] - rv[j];
        di[j] = coeff[j] * theta * susceptible - nu * iv[j];
        dr[j] = nu * iv[j];
    }
}

double sup_diff(const double* a, const double* b, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d mx = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
        mx = _mm256_max_pd(mx, _mm256_andnot_pd(signmask, d));
    }
    const __m128d lo = _mm256_castpd256_pd128(mx);
    const __m128d hi = _mm256_extractf128_pd(mx, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
    for (; j < n; ++j) {
        const double d = std::fabs(a[j] - b[j]);
        if (d > m) m = d;
    }
    return m;
}

double l2_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; j < n; ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

bool compiled_in() { return true; }

const KernelTable table = {axpy_out, rk4_combine, dot, sir_rhs, sup_diff, l2_diff};

} // namespace cascade::kernels::avx2

#else // no AVX2/FMA at compile time

namespace cascade::kernels::avx2 {

bool compiled_in() { return false; }

const KernelTable table = {nullptr, nullptr, nullptr, nullptr, nullptr, nullptr};

} // namespace cascade::kernels::avx2

#endif

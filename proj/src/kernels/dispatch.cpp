// Runtime backend selection. Probes the CPU once, honors the
// CASCADE_KERNELS environment variable, and routes the public kernel API
// through the chosen table.

#include "cascade/kernels.hpp"

#include "cascade/errors.hpp"
#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

namespace cascade::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Selection {
    Backend backend;
    const KernelTable* table;
};

Selection pick_initial() {
    const bool avx2_ok = avx2::compiled_in() && cpu_has_avx2();
    const char* env = std::getenv("CASCADE_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0)
            return {Backend::Scalar, &scalar::table};
        if (std::strcmp(env, "avx2") == 0 && avx2_ok)
            return {Backend::Avx2, &avx2::table};
        // Unknown or unavailable request falls through to auto selection.
    }
    if (avx2_ok)
        return {Backend::Avx2, &avx2::table};
    return {Backend::Scalar, &scalar::table};
}

Selection& selection() {
    static Selection sel = pick_initial();
    return sel;
}

} // namespace

Backend active() { return selection().backend; }

bool supported(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return avx2::compiled_in() && cpu_has_avx2();
    }
    return false;
}

void force(Backend b) {
    if (!supported(b))
        throw ValidationError(std::string("kernel backend unavailable: ") + name(b));
    selection() = {b, b == Backend::Avx2 ? &avx2::table : &scalar::table};
}

const char* name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

void axpy_out(std::span<double> y, std::span<const double> x, double a,
              std::span<const double> k) {
    selection().table->axpy_out(y.data(), x.data(), a, k.data(), y.size());
}

void rk4_combine(std::span<double> y, double w, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4) {
    selection().table->rk4_combine(y.data(), w, k1.data(), k2.data(), k3.data(),
                                   k4.data(), y.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    return selection().table->dot(a.data(), b.data(), a.size());
}

void sir_rhs(std::span<double> di, std::span<double> dr,
             std::span<const double> coeff, std::span<const double> cap,
             std::span<const double> iv, std::span<const double> rv,
             double theta, double nu) {
    selection().table->sir_rhs(di.data(), dr.data(), coeff.data(), cap.data(),
                               iv.data(), rv.data(), theta, nu, di.size());
}

double sup_diff(std::span<const double> a, std::span<const double> b) {
    return selection().table->sup_diff(a.data(), b.data(), a.size());
}

double l2_diff(std::span<const double> a, std::span<const double> b) {
    return selection().table->l2_diff(a.data(), b.data(), a.size());
}

} // namespace cascade::kernels

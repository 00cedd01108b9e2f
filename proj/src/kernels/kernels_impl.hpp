#pragma once

// Internal: per-backend kernel entry points and the dispatch table glue.
// Both variant namespaces implement the same signatures; dispatch.cpp wires
// the selected one into the public API.

#include <cstddef>

namespace cascade::kernels {

struct KernelTable {
    void (*axpy_out)(double*, const double*, double, const double*, std::size_t);
    void (*rk4_combine)(double*, double, const double*, const double*,
                        const double*, const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    void (*sir_rhs)(double*, double*, const double*, const double*,
                    const double*, const double*, double, double, std::size_t);
    double (*sup_diff)(const double*, const double*, std::size_t);
    double (*l2_diff)(const double*, const double*, std::size_t);
};

namespace scalar {
extern const KernelTable table;
}

namespace avx2 {
bool compiled_in(); // false when the TU was built without AVX2 support
extern const KernelTable table;
}

} // namespace cascade::kernels

#include "strid/kernels.hpp"

namespace strid::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

const Ops& active_ops() {
    static const Ops& selected = cpu_has_avx2_fma() ? avx2_ops() : scalar_ops();
    return selected;
}

bool simd_active() { return &active_ops() == &avx2_ops(); }

}  // namespace strid::kernels

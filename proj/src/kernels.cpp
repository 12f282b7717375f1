#include "aewalk/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace aewalk::kernels {

namespace {

Isa detect()
{
    if (const char* env = std::getenv("AEWALK_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    }
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

bool avx2_compiled()
{
#ifdef AEWALK_WITH_AVX2
    return true;
#else
    return false;
#endif
}

bool avx2_supported()
{
#if defined(AEWALK_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() { return current(); }

void force_isa(Isa isa)
{
    if (isa == Isa::avx2 && !avx2_supported()) throw DomainError("AVX2 kernels unavailable on this host");
    current() = isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void split_rotate(const RotateArgs& args)
{
#ifdef AEWALK_WITH_AVX2
    if (current().load(std::memory_order_relaxed) == Isa::avx2) return split_rotate_avx2(args);
#endif
    split_rotate_scalar(args);
}

void split_map(const MapArgs& args)
{
#ifdef AEWALK_WITH_AVX2
    if (current().load(std::memory_order_relaxed) == Isa::avx2) return split_map_avx2(args);
#endif
    split_map_scalar(args);
}

}  // namespace aewalk::kernels

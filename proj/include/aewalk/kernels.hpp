#pragma once

#include <cstddef>

#include "aewalk/angles.hpp"

// Inner loops of the lattice and half-line steps. Each element is a pair of
// complex numbers (p0, p1) located every `stride` complex values.
//
//   split_rotate: out = ( c*a.p0 - s*b.p1 , s*cc.p0 + c*d.p1 )
//   split_map:    out = ( h00*a.p0 + h01*a.p1 , h10*cc.p0 + h11*cc.p1 )
//
// The scalar and AVX2 variants produce bitwise identical output.
namespace aewalk::kernels {

enum class Isa { scalar, avx2 };

struct RotateArgs {
    const cplx* a;
    const cplx* b;
    const cplx* c;
    const cplx* d;
    cplx* out;
    std::size_t count;
    std::size_t stride;
    double cos;
    double sin;
};

struct MapArgs {
    const cplx* a;
    const cplx* c;
    cplx* out;
    std::size_t count;
    std::size_t stride;
    cplx h[4];  // row-major 2x2
};

void split_rotate(const RotateArgs& args);
void split_map(const MapArgs& args);

void split_rotate_scalar(const RotateArgs& args);
void split_map_scalar(const MapArgs& args);
#ifdef AEWALK_WITH_AVX2
void split_rotate_avx2(const RotateArgs& args);
void split_map_avx2(const MapArgs& args);
#endif

bool avx2_compiled();
bool avx2_supported();
// Selected at first use: AVX2 when compiled in and supported by the CPU,
// unless AEWALK_ISA=scalar. force_isa overrides for tests.
Isa active_isa();
void force_isa(Isa isa);
const char* isa_name(Isa isa);

}  // namespace aewalk::kernels

#include <immintrin.h>

#include "aewalk/kernels.hpp"

namespace aewalk::kernels {

namespace {

inline __m256d load_pair(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

inline void store_pair(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// Lane-wise complex product of two packed pairs, no FMA.
inline __m256d cmul(__m256d x, __m256d y)
{
    const __m256d yr = _mm256_movedup_pd(y);
    const __m256d yi = _mm256_permute_pd(y, 0xF);
    const __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(x, yr), _mm256_mul_pd(xs, yi));
}

}  // namespace

void split_rotate_avx2(const RotateArgs& p)
{
    const __m256d w_lo = _mm256_setr_pd(p.cos, p.cos, p.sin, p.sin);
    const __m256d w_hi = _mm256_setr_pd(p.sin, p.sin, p.cos, p.cos);
    const __m256d neg_lo = _mm256_setr_pd(-0.0, -0.0, 0.0, 0.0);
    for (std::size_t i = 0; i < p.count; ++i) {
        const std::size_t o = i * p.stride;
        const __m256d a = load_pair(p.a + o);
        const __m256d b = load_pair(p.b + o);
        const __m256d c = load_pair(p.c + o);
        const __m256d d = load_pair(p.d + o);
        const __m256d first = _mm256_permute2f128_pd(a, c, 0x20);   // a.p0 | c.p0
        const __m256d second = _mm256_permute2f128_pd(b, d, 0x31);  // b.p1 | d.p1
        // (c*a0 + (-(s*b1)), s*c0 + c*d1); negating a product is exact.
        const __m256d t1 = _mm256_mul_pd(first, w_lo);
        const __m256d t2 = _mm256_xor_pd(_mm256_mul_pd(second, w_hi), neg_lo);
        store_pair(p.out + o, _mm256_add_pd(t1, t2));
    }
}

void split_map_avx2(const MapArgs& p)
{
    const __m256d m_first = _mm256_setr_pd(p.h[0].real(), p.h[0].imag(), p.h[2].real(), p.h[2].imag());
    const __m256d m_second = _mm256_setr_pd(p.h[1].real(), p.h[1].imag(), p.h[3].real(), p.h[3].imag());
    for (std::size_t i = 0; i < p.count; ++i) {
        const std::size_t o = i * p.stride;
        const __m256d a = load_pair(p.a + o);
        const __m256d c = load_pair(p.c + o);
        const __m256d first = _mm256_permute2f128_pd(a, c, 0x20);   // a.p0 | c.p0
        const __m256d second = _mm256_permute2f128_pd(a, c, 0x31);  // a.p1 | c.p1
        store_pair(p.out + o, _mm256_add_pd(cmul(first, m_first), cmul(second, m_second)));
    }
}

}  // namespace aewalk::kernels

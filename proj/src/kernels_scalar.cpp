#include "aewalk/kernels.hpp"

namespace aewalk::kernels {

namespace {

// Explicit real arithmetic keeps the operation order identical to the
// vector code (std::complex multiplication may take a different path).
inline void cmul(double xr, double xi, double yr, double yi, double& re, double& im)
{
    re = xr * yr - xi * yi;
    im = xi * yr + xr * yi;
}

}  // namespace

void split_rotate_scalar(const RotateArgs& p)
{
    const double c = p.cos, s = p.sin;
    for (std::size_t i = 0; i < p.count; ++i) {
        const std::size_t o = i * p.stride;
        const cplx a0 = p.a[o], b1 = p.b[o + 1], c0 = p.c[o], d1 = p.d[o + 1];
        const double r0 = c * a0.real() - s * b1.real();
        const double i0 = c * a0.imag() - s * b1.imag();
        const double r1 = s * c0.real() + c * d1.real();
        const double i1 = s * c0.imag() + c * d1.imag();
        p.out[o] = cplx(r0, i0);
        p.out[o + 1] = cplx(r1, i1);
    }
}

void split_map_scalar(const MapArgs& p)
{
    const cplx h00 = p.h[0], h01 = p.h[1], h10 = p.h[2], h11 = p.h[3];
    for (std::size_t i = 0; i < p.count; ++i) {
        const std::size_t o = i * p.stride;
        const cplx a0 = p.a[o], a1 = p.a[o + 1], c0 = p.c[o], c1 = p.c[o + 1];
        double pr, pi_, qr, qi;
        cmul(a0.real(), a0.imag(), h00.real(), h00.imag(), pr, pi_);
        cmul(a1.real(), a1.imag(), h01.real(), h01.imag(), qr, qi);
        const cplx out0(pr + qr, pi_ + qi);
        cmul(c0.real(), c0.imag(), h10.real(), h10.imag(), pr, pi_);
        cmul(c1.real(), c1.imag(), h11.real(), h11.imag(), qr, qi);
        p.out[o] = out0;
        p.out[o + 1] = cplx(pr + qr, pi_ + qi);
    }
}

}  // namespace aewalk::kernels

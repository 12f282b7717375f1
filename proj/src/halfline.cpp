#include "aewalk/halfline.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <utility>

#include "aewalk/kernels.hpp"
#include "aewalk/parallel.hpp"

namespace aewalk {

Eigen::Matrix2cd rotation(double gamma)
{
    const double c = std::cos(gamma), s = std::sin(gamma);
    Eigen::Matrix2cd h;
    h << c, -s, s, c;
    return h;
}

Eigen::Matrix2cd phase_matrix(double k)
{
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = std::polar(1.0, -k);
    d(1, 1) = std::polar(1.0, k);
    return d;
}

Eigen::Matrix2cd coin_matrix(double k, const CoinAngles& g)
{
    return rotation(g.alpha()) * phase_matrix(k) * rotation(g.beta());
}

HalfLineBlocks halfline_blocks(const Eigen::Matrix2cd& H)
{
    HalfLineBlocks b;
    b.P = Eigen::Matrix2cd::Zero();
    b.Q = Eigen::Matrix2cd::Zero();
    b.S = Eigen::Matrix2cd::Zero();
    b.P.row(0) = H.row(0);
    b.Q.row(1) = H.row(1);
    b.S.row(1) = H.row(0);
    return b;
}

HalfLineState::HalfLineState(double k, int x_max) : k_(k), x_max_(x_max)
{
    if (x_max < 0) throw DomainError("half-line window must be non-negative");
    data_.assign(2 * static_cast<std::size_t>(x_max + 3), cplx(0.0, 0.0));
}

cplx& HalfLineState::at(int x, int c)
{
    if (x < 0 || x > x_max_ || c < 0 || c > 1) throw DomainError("site outside half-line window");
    return site(x)[c];
}

cplx HalfLineState::at(int x, int c) const
{
    if (x < 0 || x > x_max_ || c < 0 || c > 1) return cplx(0.0, 0.0);
    return site(x)[c];
}

double HalfLineState::norm_squared() const
{
    double acc = 0.0;
    for (int x = 0; x <= x_max_; ++x) acc += std::norm(site(x)[0]) + std::norm(site(x)[1]);
    return acc;
}

HalfLineState halfline_initial(double k, int x_max)
{
    HalfLineState s(k, x_max);
    s.at(0, 1) = 1.0;
    s.set_x_hi(0);
    return s;
}

namespace {

void step_into(const HalfLineState& in, HalfLineState& out, const kernels::MapArgs& proto)
{
    const int X = in.x_max();
    const int hi = in.x_hi();
    out.set_steps(in.steps() + 1);
    if (hi < 0) {
        out.set_x_hi(-1);
        return;
    }
    if (hi == X) {
        const cplx* v = in.site(X);
        if (proto.h[2] * v[0] + proto.h[3] * v[1] != cplx(0.0, 0.0))
            throw TruncationError("half-line step leaves the window");
    }
    const int next = std::min(X, hi + 1);
    kernels::MapArgs args = proto;
    args.a = in.site(1);
    args.c = in.site(-1);
    args.out = out.site(0);
    args.count = static_cast<std::size_t>(next + 1);
    args.stride = 2;
    kernels::split_map(args);
    // Boundary: S = |1><0|H acts on the same site.
    const cplx* b = in.site(0);
    out.site(0)[1] = proto.h[0] * b[0] + proto.h[1] * b[1];
    out.set_x_hi(next);
}

kernels::MapArgs map_for(double k, const CoinAngles& g)
{
    const Eigen::Matrix2cd H = coin_matrix(k, g);
    kernels::MapArgs args{};
    args.h[0] = H(0, 0);
    args.h[1] = H(0, 1);
    args.h[2] = H(1, 0);
    args.h[3] = H(1, 1);
    return args;
}

}  // namespace

HalfLineState halfline_step(const HalfLineState& state, const CoinAngles& angles)
{
    HalfLineState out(state.k(), state.x_max());
    step_into(state, out, map_for(state.k(), angles));
    return out;
}

HalfLineState halfline_evolve(const HalfLineState& state, const CoinAngles& angles, int n)
{
    if (n < 0) throw DomainError("step count must be non-negative");
    const kernels::MapArgs proto = map_for(state.k(), angles);
    HalfLineState a = state;
    HalfLineState b(state.k(), state.x_max());
    for (int t = 0; t < n; ++t) {
        step_into(a, b, proto);
        std::swap(a, b);
    }
    return a;
}

cplx boundary_amplitude_hat(const CoinAngles& angles, double k, int n)
{
    const HalfLineState s = halfline_evolve(halfline_initial(k, n + 1), angles, n);
    return s.at(0, 1);
}

namespace {

std::mutex& fftw_planner_lock()
{
    static std::mutex m;
    return m;
}

}  // namespace

std::vector<double> reconstruct_boundary(const CoinAngles& angles, int n, int grid)
{
    if (n < 0) throw DomainError("step count must be non-negative");
    if (grid < 2 * n + 1) throw DomainError("k grid too small: boundary amplitudes alias for M < 2n+1");
    const std::size_t M = static_cast<std::size_t>(grid);
    std::vector<cplx> hat(M);
    parallel_for(0, M, [&](std::size_t l) {
        const double k = two_pi * static_cast<double>(l) / static_cast<double>(M);
        hat[l] = boundary_amplitude_hat(angles, k, n);
    });

    // tau(j) = (1/M) sum_l hat(k_l) e^{-i k_l j}: a forward transform.
    using Buffer = std::unique_ptr<fftw_complex, decltype(&fftw_free)>;
    Buffer in(fftw_alloc_complex(M), &fftw_free);
    Buffer out(fftw_alloc_complex(M), &fftw_free);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> g(fftw_planner_lock());
        plan = fftw_plan_dft_1d(grid, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (std::size_t l = 0; l < M; ++l) {
        in.get()[l][0] = hat[l].real();
        in.get()[l][1] = hat[l].imag();
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> g(fftw_planner_lock());
        fftw_destroy_plan(plan);
    }
    std::vector<double> nu(static_cast<std::size_t>(2 * n + 1));
    const double scale = 1.0 / static_cast<double>(M);
    for (int j = -n; j <= n; ++j) {
        const std::size_t idx = static_cast<std::size_t>((j + grid) % grid);
        const cplx tau(out.get()[idx][0] * scale, out.get()[idx][1] * scale);
        nu[static_cast<std::size_t>(j + n)] = std::norm(tau);
    }
    return nu;
}

}  // namespace aewalk

#include "aewalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "aewalk/kernels.hpp"
#include "aewalk/parallel.hpp"

namespace aewalk {

namespace detail {

template <int C>
VertexGrid<C>::VertexGrid(Window w) : window_(w)
{
    if (w.x_max < 0 || w.y_max < 0) throw DomainError("window extents must be non-negative");
    stride_ = static_cast<std::size_t>(w.x_max + 3) * C;
    data_.assign(stride_ * static_cast<std::size_t>(2 * w.y_max + 3), cplx(0.0, 0.0));
}

template <int C>
bool VertexGrid<C>::contains(int x, int y) const
{
    return x >= 0 && x <= window_.x_max && y >= -window_.y_max && y <= window_.y_max;
}

template <int C>
cplx& VertexGrid<C>::at(int x, int y, int c)
{
    if (!contains(x, y) || c < 0 || c >= C) throw DomainError("vertex outside window");
    return data_[offset(x, y) + static_cast<std::size_t>(c)];
}

template <int C>
cplx VertexGrid<C>::at(int x, int y, int c) const
{
    if (!contains(x, y) || c < 0 || c >= C) return cplx(0.0, 0.0);
    return data_[offset(x, y) + static_cast<std::size_t>(c)];
}

template <int C>
double VertexGrid<C>::norm_squared() const
{
    double acc = 0.0;
    for (int y = -window_.y_max; y <= window_.y_max; ++y) {
        const cplx* v = vertex(0, y);
        for (int i = 0; i < (window_.x_max + 1) * C; ++i) acc += std::norm(v[i]);
    }
    return acc;
}

template <int C>
void VertexGrid<C>::set_full_extent()
{
    extent_ = Extent{window_.x_max, -window_.y_max, window_.y_max};
}

template class VertexGrid<2>;
template class VertexGrid<4>;

}  // namespace detail

namespace {

Extent grown(const Extent& e, const Window& w)
{
    if (e.empty()) return e;
    return Extent{std::min(w.x_max, e.x_hi + 1), std::max(-w.y_max, e.y_lo - 1), std::min(w.y_max, e.y_hi + 1)};
}

[[noreturn]] void truncated(const char* what, int x, int y)
{
    throw TruncationError(std::string(what) + " leaves the window at vertex (" + std::to_string(x) + "," +
                          std::to_string(y) + ")");
}

// Amplitude that one U step would move across the rim.
void check_arc_rim(const ArcField& f, const CoinAngles& g)
{
    const Extent& e = f.extent();
    if (e.empty()) return;
    const Window& w = f.window();
    const double ca = g.cos_alpha(), sa = g.sin_alpha(), cb = g.cos_beta(), sb = g.sin_beta();
    if (e.x_hi == w.x_max) {
        for (int y = e.y_lo; y <= e.y_hi; ++y) {
            const cplx* v = f.vertex(w.x_max, y);
            if (sa * v[2] + ca * v[3] != cplx(0.0, 0.0)) truncated("step", w.x_max, y);
        }
    }
    for (int x = 0; x <= e.x_hi; ++x) {
        if (e.y_hi == w.y_max) {
            const cplx* v = f.vertex(x, w.y_max);
            if (sb * v[0] + cb * v[1] != cplx(0.0, 0.0)) truncated("step", x, w.y_max);
        }
        if (e.y_lo == -w.y_max) {
            const cplx* v = f.vertex(x, -w.y_max);
            if (cb * v[0] - sb * v[1] != cplx(0.0, 0.0)) truncated("step", x, -w.y_max);
        }
    }
}

// One U = SC step from `in` into `out`. `out` must share the window and be
// zero outside the grown extent (fresh, or the buffer from two steps back).
void step_into(const ArcField& in, ArcField& out, const CoinAngles& g)
{
    check_arc_rim(in, g);
    const Extent e = grown(in.extent(), in.window());
    out.set_extent(e);
    out.set_steps(in.steps() + 1);
    if (e.empty()) return;
    const double ca = g.cos_alpha(), sa = g.sin_alpha(), cb = g.cos_beta(), sb = g.sin_beta();
    const std::size_t count = static_cast<std::size_t>(e.x_hi + 1);
    parallel_for(static_cast<std::size_t>(e.y_lo + in.window().y_max),
                 static_cast<std::size_t>(e.y_hi + in.window().y_max + 1), [&](std::size_t row) {
                     const int y = static_cast<int>(row) - in.window().y_max;
                     cplx* o = out.vertex(0, y);
                     // Horizontal arcs: coin output on vertical arcs of the x-neighbours.
                     kernels::split_rotate({in.vertex(1, y) + 2, in.vertex(1, y) + 2, in.vertex(-1, y) + 2,
                                            in.vertex(-1, y) + 2, o, count, 4, ca, sa});
                     // Vertical arcs: coin output on horizontal arcs of the y-neighbours.
                     kernels::split_rotate({in.vertex(0, y + 1), in.vertex(0, y + 1), in.vertex(0, y - 1),
                                            in.vertex(0, y - 1), o + 2, count, 4, cb, sb});
                     const cplx* b = in.vertex(0, y);
                     o[1] = ca * b[2] - sa * b[3];
                 });
}

void gamma_into(const SpinorField& in, SpinorField& chi, SpinorField& out, const CoinAngles& g)
{
    const Window& w = in.window();
    const Extent& e = in.extent();
    out.set_steps(in.steps() + 1);
    if (e.empty()) {
        out.set_extent(e);
        return;
    }
    const double ca = g.cos_alpha(), sa = g.sin_alpha(), cb = g.cos_beta(), sb = g.sin_beta();
    for (int x = 0; x <= e.x_hi; ++x) {
        if (e.y_hi == w.y_max) {
            const cplx* v = in.vertex(x, w.y_max);
            if (sb * v[0] + cb * v[1] != cplx(0.0, 0.0)) truncated("gamma step", x, w.y_max);
        }
        if (e.y_lo == -w.y_max) {
            const cplx* v = in.vertex(x, -w.y_max);
            if (cb * v[0] - sb * v[1] != cplx(0.0, 0.0)) truncated("gamma step", x, -w.y_max);
        }
    }
    const int y_lo = std::max(-w.y_max, e.y_lo - 1);
    const int y_hi = std::min(w.y_max, e.y_hi + 1);
    const std::size_t rows_begin = static_cast<std::size_t>(y_lo + w.y_max);
    const std::size_t rows_end = static_cast<std::size_t>(y_hi + w.y_max + 1);

    // Vertical half step: horizontal pairs of rows y+1, y-1 into chi.
    const std::size_t chi_count = static_cast<std::size_t>(e.x_hi + 1);
    parallel_for(rows_begin, rows_end, [&](std::size_t row) {
        const int y = static_cast<int>(row) - w.y_max;
        kernels::split_rotate({in.vertex(0, y + 1), in.vertex(0, y + 1), in.vertex(0, y - 1), in.vertex(0, y - 1),
                               chi.vertex(0, y), chi_count, 2, cb, sb});
    });
    // chi beyond its x range must read as zero in the horizontal half step.
    if (e.x_hi + 1 <= w.x_max) {
        for (int y = y_lo; y <= y_hi; ++y) {
            cplx* v = chi.vertex(e.x_hi + 1, y);
            v[0] = v[1] = cplx(0.0, 0.0);
        }
    }
    if (e.x_hi == w.x_max) {
        for (int y = y_lo; y <= y_hi; ++y) {
            const cplx* v = chi.vertex(w.x_max, y);
            if (sa * v[0] + ca * v[1] != cplx(0.0, 0.0)) truncated("gamma step", w.x_max, y);
        }
    }

    const Extent next{std::min(w.x_max, e.x_hi + 1), y_lo, y_hi};
    out.set_extent(next);
    const std::size_t count = static_cast<std::size_t>(next.x_hi + 1);
    parallel_for(rows_begin, rows_end, [&](std::size_t row) {
        const int y = static_cast<int>(row) - w.y_max;
        cplx* o = out.vertex(0, y);
        kernels::split_rotate({chi.vertex(1, y), chi.vertex(1, y), chi.vertex(-1, y), chi.vertex(-1, y), o, count, 2,
                               ca, sa});
        const cplx* b = chi.vertex(0, y);
        o[1] = ca * b[0] - sa * b[1];
    });
}

template <class Grid>
Grid fresh_like(const Grid& f)
{
    Grid out(f.window());
    return out;
}

}  // namespace

Window light_cone_window(int double_steps)
{
    if (double_steps < 0) throw DomainError("step count must be non-negative");
    return Window{2 * double_steps + 1, 2 * double_steps + 1};
}

ArcField initial_state(Window w)
{
    if (w.x_max < 0 || w.y_max < 0) throw DomainError("window excludes the origin");
    ArcField f(w);
    f.at(0, 0, 1) = 1.0;
    f.set_extent(Extent{0, 0, 0});
    return f;
}

ArcField coin_apply(const ArcField& field, const CoinAngles& g)
{
    ArcField out = fresh_like(field);
    const Extent& e = field.extent();
    out.set_extent(e);
    out.set_steps(field.steps() + 1);
    const double ca = g.cos_alpha(), sa = g.sin_alpha(), cb = g.cos_beta(), sb = g.sin_beta();
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        for (int x = 0; x <= e.x_hi; ++x) {
            const cplx* v = field.vertex(x, y);
            cplx* o = out.vertex(x, y);
            o[0] = sa * v[2] + ca * v[3];
            o[1] = ca * v[2] - sa * v[3];
            o[2] = sb * v[0] + cb * v[1];
            o[3] = cb * v[0] - sb * v[1];
        }
    }
    return out;
}

ArcField shift_apply(const ArcField& field)
{
    const Window& w = field.window();
    const Extent& e = field.extent();
    ArcField out = fresh_like(field);
    if (e.empty()) return out;
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        if (e.x_hi == w.x_max && field.vertex(w.x_max, y)[0] != cplx(0.0, 0.0)) truncated("shift", w.x_max, y);
    }
    for (int x = 0; x <= e.x_hi; ++x) {
        if (e.y_hi == w.y_max && field.vertex(x, w.y_max)[2] != cplx(0.0, 0.0)) truncated("shift", x, w.y_max);
        if (e.y_lo == -w.y_max && field.vertex(x, -w.y_max)[3] != cplx(0.0, 0.0)) truncated("shift", x, -w.y_max);
    }
    const Extent g = grown(e, w);
    out.set_extent(g);
    out.set_steps(field.steps());
    for (int y = g.y_lo; y <= g.y_hi; ++y) {
        for (int x = 0; x <= g.x_hi; ++x) {
            cplx* o = out.vertex(x, y);
            o[0] = field.vertex(x + 1, y)[1];
            o[1] = x == 0 ? field.vertex(0, y)[1] : field.vertex(x - 1, y)[0];
            o[2] = field.vertex(x, y + 1)[3];
            o[3] = field.vertex(x, y - 1)[2];
        }
    }
    return out;
}

ArcField step(const ArcField& field, const CoinAngles& angles)
{
    ArcField out = fresh_like(field);
    step_into(field, out, angles);
    return out;
}

ArcField evolve(const ArcField& field, const CoinAngles& angles, int n)
{
    if (n < 0) throw DomainError("step count must be non-negative");
    if (n == 0) return field;
    ArcField a = step(field, angles);
    if (n == 1) return a;
    // Ping-pong: extents only grow and every vertex inside the new extent is
    // rewritten, so stale values from two steps back are always overwritten.
    ArcField b = fresh_like(field);
    for (int t = 1; t < n; ++t) {
        step_into(a, b, angles);
        std::swap(a, b);
    }
    return a;
}

SpinorField to_spinor(const ArcField& field)
{
    const Window& w = field.window();
    SpinorField s(w);
    const Extent& e = field.extent();
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        for (int x = 0; x <= e.x_hi; ++x) {
            const cplx* v = field.vertex(x, y);
            if (v[2] != cplx(0.0, 0.0) || v[3] != cplx(0.0, 0.0))
                throw DomainError("spinor map needs a field supported on horizontal arcs");
            cplx* o = s.vertex(x, y);
            o[0] = v[0];
            o[1] = v[1];
        }
    }
    s.set_extent(e);
    s.set_steps(field.steps() / 2);
    return s;
}

ArcField from_spinor(const SpinorField& spinor)
{
    ArcField f(spinor.window());
    const Extent& e = spinor.extent();
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        for (int x = 0; x <= e.x_hi; ++x) {
            const cplx* v = spinor.vertex(x, y);
            cplx* o = f.vertex(x, y);
            o[0] = v[0];
            o[1] = v[1];
        }
    }
    f.set_extent(e);
    f.set_steps(2 * spinor.steps());
    return f;
}

SpinorField spinor_initial_state(Window w)
{
    if (w.x_max < 0 || w.y_max < 0) throw DomainError("window excludes the origin");
    SpinorField s(w);
    s.at(0, 0, 1) = 1.0;
    s.set_extent(Extent{0, 0, 0});
    return s;
}

SpinorField gamma_step(const SpinorField& spinor, const CoinAngles& angles)
{
    SpinorField chi(spinor.window());
    SpinorField out(spinor.window());
    gamma_into(spinor, chi, out, angles);
    return out;
}

SpinorField gamma_evolve(const SpinorField& spinor, const CoinAngles& angles, int n)
{
    return gamma_evolve(spinor, angles, n, nullptr);
}

SpinorField gamma_evolve(const SpinorField& spinor, const CoinAngles& angles, int n,
                         const std::function<void(int, const SpinorField&)>& observe)
{
    if (n < 0) throw DomainError("step count must be non-negative");
    if (n == 0) return spinor;
    SpinorField chi(spinor.window());
    SpinorField a(spinor.window());
    gamma_into(spinor, chi, a, angles);
    if (observe) observe(1, a);
    SpinorField b(spinor.window());
    for (int t = 1; t < n; ++t) {
        gamma_into(a, chi, b, angles);
        std::swap(a, b);
        if (observe) observe(t + 1, a);
    }
    return a;
}

double BoundaryDistribution::at(int j) const
{
    if (j < -y_max || j > y_max) return 0.0;
    return nu[static_cast<std::size_t>(j + y_max)];
}

double BoundaryDistribution::total() const
{
    double acc = 0.0;
    for (double v : nu) acc += v;
    return acc;
}

double FullDistribution::at(int j, int m) const
{
    if (j < 0 || j >= columns || m < -y_max || m > y_max) return 0.0;
    return nu[static_cast<std::size_t>(j) * static_cast<std::size_t>(2 * y_max + 1) +
              static_cast<std::size_t>(m + y_max)];
}

double FullDistribution::column_total(int j) const
{
    double acc = 0.0;
    for (int m = -y_max; m <= y_max; ++m) acc += at(j, m);
    return acc;
}

namespace {

void require_even(const ArcField& field)
{
    if (field.steps() % 2 != 0)
        throw ParityError("horizontal-arc distribution requested after an odd number of steps");
}

template <class Grid>
BoundaryDistribution boundary_from(const Grid& g)
{
    BoundaryDistribution d;
    d.y_max = g.window().y_max;
    d.nu.resize(static_cast<std::size_t>(2 * d.y_max + 1));
    for (int y = -d.y_max; y <= d.y_max; ++y) d.nu[static_cast<std::size_t>(y + d.y_max)] = std::norm(g.vertex(0, y)[1]);
    return d;
}

template <class Grid>
FullDistribution full_from(const Grid& g)
{
    FullDistribution d;
    d.y_max = g.window().y_max;
    d.columns = 2 * (g.window().x_max + 1);
    const std::size_t h = static_cast<std::size_t>(2 * d.y_max + 1);
    d.nu.assign(h * static_cast<std::size_t>(d.columns), 0.0);
    for (int x = 0; x <= g.window().x_max; ++x) {
        for (int y = -d.y_max; y <= d.y_max; ++y) {
            const cplx* v = g.vertex(x, y);
            const std::size_t m = static_cast<std::size_t>(y + d.y_max);
            d.nu[static_cast<std::size_t>(2 * x) * h + m] = std::norm(v[1]);
            d.nu[static_cast<std::size_t>(2 * x + 1) * h + m] = std::norm(v[0]);
        }
    }
    return d;
}

}  // namespace

BoundaryDistribution boundary_distribution(const ArcField& field)
{
    require_even(field);
    return boundary_from(field);
}

BoundaryDistribution boundary_distribution(const SpinorField& spinor) { return boundary_from(spinor); }

FullDistribution full_distribution(const ArcField& field)
{
    require_even(field);
    return full_from(field);
}

FullDistribution full_distribution(const SpinorField& spinor) { return full_from(spinor); }

ArcField moving_coin(const ArcField& field, const CoinAngles& g)
{
    ArcField out = fresh_like(field);
    const Extent& e = field.extent();
    out.set_extent(e);
    out.set_steps(field.steps() + 1);
    const double ca = g.cos_alpha(), sa = g.sin_alpha(), cb = g.cos_beta(), sb = g.sin_beta();
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        for (int x = 0; x <= e.x_hi; ++x) {
            const cplx* v = field.vertex(x, y);
            cplx* o = out.vertex(x, y);
            o[0] = ca * v[2] - sa * v[3];
            o[1] = sa * v[2] + ca * v[3];
            o[2] = cb * v[0] - sb * v[1];
            o[3] = sb * v[0] + cb * v[1];
        }
    }
    return out;
}

ArcField moving_shift(const ArcField& field, MovingShift variant)
{
    const Window& w = field.window();
    const Extent& e = field.extent();
    ArcField out = fresh_like(field);
    if (e.empty()) return out;
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        if (e.x_hi == w.x_max && field.vertex(w.x_max, y)[1] != cplx(0.0, 0.0)) truncated("moving shift", w.x_max, y);
    }
    for (int x = 0; x <= e.x_hi; ++x) {
        if (e.y_hi == w.y_max && field.vertex(x, w.y_max)[3] != cplx(0.0, 0.0)) truncated("moving shift", x, w.y_max);
        if (e.y_lo == -w.y_max && field.vertex(x, -w.y_max)[2] != cplx(0.0, 0.0))
            truncated("moving shift", x, -w.y_max);
    }
    const cplx loop_phase = variant == MovingShift::phased ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    const Extent g = grown(e, w);
    out.set_extent(g);
    out.set_steps(field.steps());
    for (int y = g.y_lo; y <= g.y_hi; ++y) {
        for (int x = 0; x <= g.x_hi; ++x) {
            cplx* o = out.vertex(x, y);
            o[0] = field.vertex(x + 1, y)[0];
            o[1] = x == 0 ? loop_phase * field.vertex(0, y)[0] : field.vertex(x - 1, y)[1];
            o[2] = field.vertex(x, y + 1)[2];
            o[3] = field.vertex(x, y - 1)[3];
        }
    }
    return out;
}

ArcField shift_representation_convert(const ArcField& field)
{
    const cplx sigma1[4] = {0.0, 1.0, 1.0, 0.0};
    return apply_local_pairs(field, sigma1);
}

ArcField apply_local_pairs(const ArcField& field, const cplx m[4])
{
    ArcField out = fresh_like(field);
    const Extent& e = field.extent();
    out.set_extent(e);
    out.set_steps(field.steps());
    for (int y = e.y_lo; y <= e.y_hi; ++y) {
        for (int x = 0; x <= e.x_hi; ++x) {
            const cplx* v = field.vertex(x, y);
            cplx* o = out.vertex(x, y);
            o[0] = m[0] * v[0] + m[1] * v[1];
            o[1] = m[2] * v[0] + m[3] * v[1];
            o[2] = m[0] * v[2] + m[1] * v[3];
            o[3] = m[2] * v[2] + m[3] * v[3];
        }
    }
    return out;
}

}  // namespace aewalk

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "aewalk/angles.hpp"

// Arc-based evolution on the half plane {x >= 0} with a self-loop at every
// boundary vertex. Arc (x,y;d) is stored at its terminus (x,y):
//   d=0 arrives from (x+1,y), d=1 from (x-1,y) (self-loop when x=0),
//   d=2 arrives from (x,y+1), d=3 from (x,y-1).
// The same 4-block read in the order (L,R,D,U) is the vertex representation.
namespace aewalk {

struct Window {
    int x_max = 0;
    int y_max = 0;
};

// Window for n double steps from the origin: x_max = y_max = 2n+1.
Window light_cone_window(int double_steps);

// Bounding box of vertices that may carry nonzero amplitude.
struct Extent {
    int x_hi = -1;
    int y_lo = 1;
    int y_hi = 0;
    bool empty() const { return x_hi < 0 || y_lo > y_hi; }
};

namespace detail {

// Dense vertex grid with one ghost layer on every side so that neighbour
// reads never leave the allocation. Ghost cells stay zero.
template <int Components>
class VertexGrid {
public:
    VertexGrid() = default;
    explicit VertexGrid(Window w);

    const Window& window() const { return window_; }
    std::size_t row_stride() const { return stride_; }  // complex values per row
    bool contains(int x, int y) const;

    cplx* vertex(int x, int y) { return data_.data() + offset(x, y); }
    const cplx* vertex(int x, int y) const { return data_.data() + offset(x, y); }
    cplx& at(int x, int y, int c);
    cplx at(int x, int y, int c) const;

    const std::vector<cplx>& raw() const { return data_; }
    double norm_squared() const;

    const Extent& extent() const { return extent_; }
    void set_extent(const Extent& e) { extent_ = e; }
    void set_full_extent();
    long steps() const { return steps_; }
    void set_steps(long s) { steps_ = s; }

private:
    std::size_t offset(int x, int y) const
    {
        return static_cast<std::size_t>(y + window_.y_max + 1) * stride_ +
               static_cast<std::size_t>(x + 1) * Components;
    }

    Window window_{};
    std::size_t stride_ = 0;
    std::vector<cplx> data_;
    Extent extent_{};
    long steps_ = 0;
};

}  // namespace detail

// Amplitudes on all arcs of the window, with the number of coin
// applications since the initial state as time-parity marker.
class ArcField : public detail::VertexGrid<4> {
public:
    using VertexGrid::VertexGrid;
};

// Two components per vertex: the image of a horizontal-arc field under the
// map (x;0),(x;1) -> components 0,1.
class SpinorField : public detail::VertexGrid<2> {
public:
    using VertexGrid::VertexGrid;
};

ArcField initial_state(Window w);

ArcField coin_apply(const ArcField& field, const CoinAngles& angles);
ArcField shift_apply(const ArcField& field);
ArcField step(const ArcField& field, const CoinAngles& angles);
ArcField evolve(const ArcField& field, const CoinAngles& angles, int n);

SpinorField to_spinor(const ArcField& field);
ArcField from_spinor(const SpinorField& spinor);

SpinorField spinor_initial_state(Window w);
SpinorField gamma_step(const SpinorField& spinor, const CoinAngles& angles);
SpinorField gamma_evolve(const SpinorField& spinor, const CoinAngles& angles, int n);
// Calls observe(t, state) after every step t = 1..n; buffers are reused.
SpinorField gamma_evolve(const SpinorField& spinor, const CoinAngles& angles, int n,
                         const std::function<void(int, const SpinorField&)>& observe);

// Boundary self-loop masses nu(j) = |psi((0,j);1)|^2 for j in [-y_max, y_max].
struct BoundaryDistribution {
    int y_max = 0;
    std::vector<double> nu;
    double at(int j) const;
    double total() const;
};

// nu(2j,m) = |psi((j,m);1)|^2, nu(2j+1,m) = |psi((j,m);0)|^2.
struct FullDistribution {
    int columns = 0;  // 2*(x_max+1)
    int y_max = 0;
    std::vector<double> nu;  // column-major blocks of 2*y_max+1
    double at(int j, int m) const;
    double column_total(int j) const;
};

BoundaryDistribution boundary_distribution(const ArcField& field);
BoundaryDistribution boundary_distribution(const SpinorField& spinor);
FullDistribution full_distribution(const ArcField& field);
FullDistribution full_distribution(const SpinorField& spinor);

// Moving-shift description U = S''C'' in the order (L,R,D,U).
enum class MovingShift { standard, phased };

ArcField moving_coin(const ArcField& field, const CoinAngles& angles);
ArcField moving_shift(const ArcField& field, MovingShift variant = MovingShift::standard);
// Applies S''^{-1}S' = 1 (x) (sigma1 + sigma1): relabels a flip-flop state
// into the moving-shift frame, so that S'' convert(C'psi) = S'C'psi.
ArcField shift_representation_convert(const ArcField& field);
// Applies the same 2x2 matrix to the (L,R) and (D,U) pairs of every vertex.
ArcField apply_local_pairs(const ArcField& field, const cplx m[4]);

}  // namespace aewalk

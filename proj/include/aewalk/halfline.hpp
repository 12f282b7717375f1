#pragma once

#include <Eigen/Core>
#include <vector>

#include "aewalk/angles.hpp"

// Wave-number decomposition along y: one half-line walk per k.
namespace aewalk {

// H_alpha D(k) H_beta with D(k) = diag(e^{-ik}, e^{ik}) and
// H_g = [[cos g, -sin g], [sin g, cos g]].
Eigen::Matrix2cd coin_matrix(double k, const CoinAngles& angles);
Eigen::Matrix2cd rotation(double gamma);
Eigen::Matrix2cd phase_matrix(double k);

// Blocks of the half-line step: P = |0><0|H, Q = |1><1|H, S = |1><0|H.
struct HalfLineBlocks {
    Eigen::Matrix2cd P, Q, S;
};
HalfLineBlocks halfline_blocks(const Eigen::Matrix2cd& H);

class HalfLineState {
public:
    HalfLineState() = default;
    HalfLineState(double k, int x_max);

    double k() const { return k_; }
    int x_max() const { return x_max_; }
    int x_hi() const { return x_hi_; }  // last site that may be nonzero
    void set_x_hi(int x) { x_hi_ = x; }
    long steps() const { return steps_; }
    void set_steps(long s) { steps_ = s; }

    cplx& at(int x, int c);
    cplx at(int x, int c) const;
    cplx* site(int x) { return data_.data() + 2 * static_cast<std::size_t>(x + 1); }
    const cplx* site(int x) const { return data_.data() + 2 * static_cast<std::size_t>(x + 1); }
    double norm_squared() const;

private:
    double k_ = 0.0;
    int x_max_ = 0;
    int x_hi_ = -1;
    long steps_ = 0;
    std::vector<cplx> data_;  // ghost site on each side
};

// delta at x = 0 with components (0, 1).
HalfLineState halfline_initial(double k, int x_max);
HalfLineState halfline_step(const HalfLineState& state, const CoinAngles& angles);
HalfLineState halfline_evolve(const HalfLineState& state, const CoinAngles& angles, int n);

// Component 1 at x = 0 after n steps from the initial state: the Fourier
// transform sum_j psi_n(a_j) e^{ikj} of the boundary amplitudes.
cplx boundary_amplitude_hat(const CoinAngles& angles, double k, int n);

// nu_n(j), j in [-n, n], from an M-point k grid by inverse DFT (needs M >= 2n+1).
std::vector<double> reconstruct_boundary(const CoinAngles& angles, int n, int grid);

}  // namespace aewalk

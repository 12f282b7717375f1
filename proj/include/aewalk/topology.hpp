#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "aewalk/angles.hpp"
#include "aewalk/lattice.hpp"

namespace aewalk {

// Gamma0(kx, ky) = D(kx) H_a D(ky) H_b on the boundary-free lattice.
Eigen::Matrix2cd bloch(double kx, double ky, const CoinAngles& angles);

// A = d0 I + i (d1 s1 + d2 s2 + d3 s3) for A in SU(2).
std::array<double, 4> pauli_coefficients(const Eigen::Matrix2cd& A);

// Symmetric time frame D(ky/2) H_a D(kx) H_b D(ky/2), used for windings in kx.
Eigen::Matrix2cd chiral_frame(double kx, double ky, const CoinAngles& angles);

struct SymmetryReport {
    bool phs = false;
    bool trs = false;
    bool chiral = false;
    int chiral_pauli = 0;  // 1 or 2 when chiral holds
};

// Checks on a samples x samples (kx, ky) grid with tolerance 1e-12.
SymmetryReport check_symmetries(const CoinAngles& angles, int samples = 16);

// eps2 * eps3 when both are nonzero and the bulk is gapped.
std::optional<int> nu2d(const CoinAngles& angles);

enum class Family {
    class6,  // beta = alpha + n pi
    class1,  // beta = -alpha + n pi
};

struct WindingResult {
    int nu_prime = 0;
    int nu_doubleprime = 0;
    int nu0 = 0;
    int nu_pi = 0;
    double residual = 0.0;  // distance of the raw winding from an integer
};

// Total principal-branch phase increment of z over a closed sampled loop, / 2pi.
double winding_of(const std::vector<cplx>& loop);

// Numeric windings over `points` kx samples; nullopt when the gate vanishes
// or the frame spectrum is not gapped.
std::optional<WindingResult> winding_numbers(double alpha, int n, double k, Family family, int points = 1024);

// (nu0, nu_pi) from the sign of the gate: (-1)^n cos k sin2a (class 6) or
// (-1)^n sin k sin2a (class 1).
std::optional<std::pair<int, int>> closed_form_toponum(double alpha, int n, double k, Family family);

// x' y'' - y' x'' of kx -> (d2, d3) in the class-6 frame at beta = alpha,
// by central differences with step h.
double ellipse_curvature_numerator(double alpha, double k, double kx, double h = 1e-4);

struct BoundaryChiralResult {
    bool yhat_ok = false;
    bool ycheck_ok = false;
    // (S'' X S'' X) restricted to the four arcs of a vertex, X = Yhat / Ycheck.
    Eigen::Matrix4cd yhat_boundary, ycheck_boundary, yhat_bulk, ycheck_bulk;
};

BoundaryChiralResult boundary_chiral_check(MovingShift variant);

}  // namespace aewalk

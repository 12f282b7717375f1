#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "aewalk/angles.hpp"
#include "aewalk/halfline.hpp"

namespace aewalk {

// eta(k) = conj(<0|H_k|1>) = -cos k sin(a+b) + i sin k sin(a-b).
cplx verblunsky(double k, const CoinAngles& angles);

enum class Truncation {
    plain,    // leading N x N block of the infinite matrix
    unitary,  // cut 2x2 block closed with a unit entry
};

// CMV matrix for Verblunsky parameters (eta, 0, eta, 0, ...): C = L M with
// L = T(eta) + T(eta) + ..., M = 1 + T(0) + T(0) + ..., T(e) = [[conj e, rho], [rho, -e]].
struct CMVOperator {
    cplx eta;
    double rho = 1.0;
    int size = 0;
    Eigen::MatrixXcd matrix;
};

CMVOperator build_cmv(cplx eta, int N, Truncation truncation = Truncation::plain);

// Lambda_k: phi_1(j) -> index 2j, phi_0(j) -> index 2j+1 with phases
// omega(2j) = j arg H00, omega(2j+1) = -(j+1) arg H11, arg(0) := 0.
std::vector<cplx> lambda_map(const HalfLineState& state, const CoinAngles& angles);
HalfLineState lambda_inverse(const std::vector<cplx>& f, double k, const CoinAngles& angles);

struct PointMass {
    double theta0;  // in [0, 2pi)
    double m0;
};

// Orthogonality measure of the CMV matrix: w(theta) dtheta/2pi on
// |cos theta| < rho plus an optional point mass.
class SpectralMeasure {
public:
    explicit SpectralMeasure(cplx eta);

    cplx eta() const { return eta_; }
    double rho() const { return rho_; }
    const std::optional<PointMass>& point() const { return point_; }

    double weight(double theta) const;
    // int f(theta) w(theta) dtheta / 2pi over both bands.
    cplx integrate(const std::function<cplx(double)>& f, double tol = 1e-13) const;
    double ac_mass(double tol = 1e-13) const;
    // int e^{i n theta} dmu(theta).
    cplx moment(int n, double tol = 1e-13) const;

private:
    cplx eta_;
    double rho_;
    std::optional<PointMass> point_;
};

SpectralMeasure spectral_measure(cplx eta);

// (C_k^n)_{00}, the Fourier transform of the boundary amplitudes at time n,
// evaluated through the spectral measure.
cplx return_amplitude(const CoinAngles& angles, double k, int n, double tol = 1e-13);

struct EdgeEigenvector {
    double lambda;
    double theta0;
    Eigen::VectorXcd vector;  // x_{2j} = lambda^j, x_{2j+1} = lambda^{j+1}
    double residual;          // |C^T x - e^{i theta0} x| / |x| on the plain truncation
    double tolerance;         // max(10 |lambda|^{N/2}, 1e-14)
};

EdgeEigenvector edge_eigenvector(cplx eta, int N);

// Point mass location and weight of the measure for eta (closed forms).
std::optional<PointMass> point_mass_of(cplx eta);
double edge_decay_factor(cplx eta);

}  // namespace aewalk

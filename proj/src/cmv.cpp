#include "aewalk/cmv.hpp"

#include <algorithm>
#include <cmath>

#include "aewalk/quadrature.hpp"

namespace aewalk {

cplx verblunsky(double k, const CoinAngles& g) { return cplx(-std::cos(k) * g.s(), std::sin(k) * g.r()); }

namespace {

double rho_of(cplx eta)
{
    const double a2 = std::norm(eta);
    return a2 >= 1.0 ? 0.0 : std::sqrt(1.0 - a2);
}

bool degenerate(cplx eta) { return std::abs(eta) >= 1.0 - 1e-15; }

}  // namespace

CMVOperator build_cmv(cplx eta, int N, Truncation truncation)
{
    if (N < 4) throw DomainError("CMV truncation needs N >= 4");
    if (std::abs(eta) > 1.0 + 1e-14) throw DomainError("Verblunsky parameter outside the closed unit disk");
    const double rho = rho_of(eta);
    const cplx unit = truncation == Truncation::unitary ? cplx(1.0, 0.0) : cplx(0.0, 0.0);

    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(N, N);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; i += 2) {
        if (i + 1 < N) {
            L(i, i) = std::conj(eta);
            L(i, i + 1) = rho;
            L(i + 1, i) = rho;
            L(i + 1, i + 1) = -eta;
        } else {
            L(i, i) = truncation == Truncation::unitary ? unit : std::conj(eta);
        }
    }
    M(0, 0) = 1.0;
    for (int i = 1; i < N; i += 2) {
        if (i + 1 < N) {
            M(i, i + 1) = 1.0;
            M(i + 1, i) = 1.0;
        } else {
            M(i, i) = unit;
        }
    }
    return CMVOperator{eta, rho, N, L * M};
}

namespace {

double safe_arg(cplx z) { return z == cplx(0.0, 0.0) ? 0.0 : std::arg(z); }

}  // namespace

std::vector<cplx> lambda_map(const HalfLineState& state, const CoinAngles& angles)
{
    const Eigen::Matrix2cd H = coin_matrix(state.k(), angles);
    const double a0 = safe_arg(H(0, 0)), a1 = safe_arg(H(1, 1));
    std::vector<cplx> f(2 * static_cast<std::size_t>(state.x_max() + 1));
    for (int j = 0; j <= state.x_max(); ++j) {
        f[2 * j] = std::polar(1.0, j * a0) * state.at(j, 1);
        f[2 * j + 1] = std::polar(1.0, -(j + 1) * a1) * state.at(j, 0);
    }
    return f;
}

HalfLineState lambda_inverse(const std::vector<cplx>& f, double k, const CoinAngles& angles)
{
    if (f.size() < 2 || f.size() % 2 != 0) throw DomainError("sequence length must be even and positive");
    const Eigen::Matrix2cd H = coin_matrix(k, angles);
    const double a0 = safe_arg(H(0, 0)), a1 = safe_arg(H(1, 1));
    const int x_max = static_cast<int>(f.size() / 2) - 1;
    HalfLineState s(k, x_max);
    for (int j = 0; j <= x_max; ++j) {
        s.at(j, 1) = std::polar(1.0, -j * a0) * f[2 * j];
        s.at(j, 0) = std::polar(1.0, (j + 1) * a1) * f[2 * j + 1];
    }
    s.set_x_hi(x_max);
    return s;
}

std::optional<PointMass> point_mass_of(cplx eta)
{
    if (degenerate(eta)) return PointMass{wrap_angle(-std::arg(eta)), 1.0};
    const double re = eta.real(), im = eta.imag();
    if (sign_of(re) == 0) return std::nullopt;
    const double root = std::sqrt(1.0 - im * im);
    const double base = std::asin(-im);
    const double theta0 = re >= 0.0 ? base : pi - base;
    return PointMass{wrap_angle(theta0), std::abs(re) / root};
}

double edge_decay_factor(cplx eta)
{
    const double rho = rho_of(eta);
    if (rho == 0.0) return 0.0;
    const double re = eta.real(), im = eta.imag();
    return static_cast<double>(sign_of(re)) / rho * (std::sqrt(1.0 - im * im) - std::abs(re));
}

SpectralMeasure::SpectralMeasure(cplx eta) : eta_(eta), rho_(rho_of(eta)), point_(point_mass_of(eta))
{
    if (std::abs(eta) > 1.0 + 1e-14) throw DomainError("Verblunsky parameter outside the closed unit disk");
}

double SpectralMeasure::weight(double theta) const
{
    const double c = std::cos(theta);
    if (std::abs(c) >= rho_) return 0.0;
    return std::sqrt(rho_ * rho_ - c * c) / std::abs(std::sin(theta) + eta_.imag());
}

cplx SpectralMeasure::integrate(const std::function<cplx(double)>& f, double tol) const
{
    if (degenerate(eta_) || rho_ == 0.0) return cplx(0.0, 0.0);
    const double re2 = eta_.real() * eta_.real();
    const double im = eta_.imag();
    const double r2 = rho_ * rho_;
    // cos theta = rho u on each band; the 1/|sin theta + Im eta| factor is
    // rationalised so that nothing cancels near the band edges.
    auto band = [&](double u) {
        const double one_minus = 1.0 - u * u;
        const double sigma = std::sqrt(1.0 - r2 * u * u);
        const double denom = sigma * (re2 + r2 * one_minus);
        const double t = std::acos(rho_ * u);
        const double upper = r2 * one_minus * std::abs(sigma - im) / denom;
        const double lower = r2 * one_minus * std::abs(sigma + im) / denom;
        return f(t) * upper + f(two_pi - t) * lower;
    };
    return gauss_chebyshev_adaptive(band, tol).value / two_pi;
}

double SpectralMeasure::ac_mass(double tol) const
{
    return integrate([](double) { return cplx(1.0, 0.0); }, tol).real();
}

cplx SpectralMeasure::moment(int n, double tol) const
{
    cplx acc = integrate([n](double t) { return std::polar(1.0, n * t); }, tol);
    if (point_) acc += point_->m0 * std::polar(1.0, n * point_->theta0);
    return acc;
}

SpectralMeasure spectral_measure(cplx eta) { return SpectralMeasure(eta); }

cplx return_amplitude(const CoinAngles& angles, double k, int n, double tol)
{
    if (n < 0) throw DomainError("time must be non-negative");
    return spectral_measure(verblunsky(k, angles)).moment(n, tol);
}

EdgeEigenvector edge_eigenvector(cplx eta, int N)
{
    const auto pm = point_mass_of(eta);
    if (!pm) throw DomainError("Re eta = 0: no point spectrum");
    if (N < 4) throw DomainError("CMV truncation needs N >= 4");
    const double lambda = edge_decay_factor(eta);
    Eigen::VectorXcd x(N);
    double lj = 1.0;  // lambda^j
    for (int j = 0; 2 * j < N; ++j) {
        x(2 * j) = lj;
        if (2 * j + 1 < N) x(2 * j + 1) = lj * lambda;
        lj *= lambda;
    }
    const CMVOperator c = build_cmv(eta, N, Truncation::plain);
    const cplx e = std::polar(1.0, pm->theta0);
    const double residual = (c.matrix.transpose() * x - e * x).norm() / x.norm();
    // Floor at rounding level: the tail bound underflows for small |lambda|.
    const double tolerance = std::max(10.0 * std::pow(std::abs(lambda), N / 2), 1e-14);
    return EdgeEigenvector{lambda, pm->theta0, x, residual, tolerance};
}

}  // namespace aewalk

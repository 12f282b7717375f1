#pragma once

#include <vector>

#include "aewalk/angles.hpp"
#include "aewalk/lattice.hpp"

namespace aewalk {

// Konno law with parameter 0 < p < 1. The density is +inf at |x| = p.
double konno_density(double x, double p);
double konno_cdf(double x, double p);
double konno_quantile(double u, double p);
// int_0^y t^2 f_K(t; p) dt for 0 <= y <= p.
double konno_second_moment_partial(double y, double p);

enum class Regime { continuous_linear, ballistic, localization, null };
Regime regime_of(const CoinAngles& angles);
const char* regime_name(Regime r);

// g(y) = (2 s^2 / r^2) y^2 f_K(y; |r|) on the half-line sgn(y) = sgn(rs).
class LimitDensity {
public:
    explicit LimitDensity(const CoinAngles& angles);

    double r() const { return r_; }
    double s() const { return s_; }
    int side() const { return side_; }
    double support_lo() const { return side_ > 0 ? 0.0 : -std::abs(r_); }
    double support_hi() const { return side_ > 0 ? std::abs(r_) : 0.0; }

    double g(double y) const;
    // Column j >= 0 of the edge measure: g(2i, y) = g(y) zeta^i, g(2i+1, y) = g(y) zeta^(i+1).
    double g(int j, double y) const;
    double zeta(double y) const;
    // int_{-inf}^y g.
    double cdf(double y) const;
    double c0() const;
    // Sum over all columns of the integrated edge measure.
    double total() const;

private:
    double r_, s_;
    int side_;
};

LimitDensity limit_density(const CoinAngles& angles);

enum class TimeParity { even, odd };
double localization_limit(int j, TimeParity parity, const CoinAngles& angles);

struct BallisticLimit {
    int speed_sign;  // front at j = speed_sign * n
    double mass;
};
BallisticLimit ballistic_limit(const CoinAngles& angles);

double bulk_decay_density(int j, double y, const CoinAngles& angles);
double edge_mass_total(const CoinAngles& angles);

struct ParametricPoint {
    double k, y, g;
};
// (v(k), 2 m0(k)^2 M(k) / pi) where the edge state exists and M is finite.
std::vector<ParametricPoint> parametric_plot(const CoinAngles& angles, const std::vector<double>& kgrid);

// v(k) = sgn(rs) F_K^{-1}(k/pi + 1; |r|) on k in [-pi/2, 0].
double inverse_konno_velocity(double k, const CoinAngles& angles);

struct VelocityEstimate {
    int order = 5;
    std::vector<double> coefficients;  // g_3 .. g_M
    double r_hat = 0.0;
    double c0 = 0.0;
    double s2 = 0.0;
    double slope = 0.0;  // 2 s^2 / (r_hat^2 pi)
    double k0 = 0.0;
    double condition = 0.0;
    double coverage_gap = 0.0;  // fraction of k where the fitted curve is exhausted
    std::vector<double> phi_table, y_table;

    double phi(double y) const;
    // Estimated |v(k)|.
    double speed(double k) const;
    // RMS of speed - |v_exact| on an m-point k grid, skipping | |k| - pi/2 | <= half_width.
    double rms_error(const CoinAngles& angles, int m = 720, double half_width = 0.1) const;
};

struct VelocityOptions {
    int order = 5;
    double support_fraction = 1e-2;
    double fit_start = 0.05;
    int k_points = 720;
    int table_points = 4001;
};

// From a cumulative curve G(y) sampled on increasing y >= 0.
VelocityEstimate estimate_velocity(const std::vector<double>& y, const std::vector<double>& G,
                                   const VelocityOptions& options = {});
// From boundary data at double-step n, using the heavier half.
VelocityEstimate estimate_velocity(const BoundaryDistribution& nu, int n, const VelocityOptions& options = {});

}  // namespace aewalk

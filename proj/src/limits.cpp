#include "aewalk/limits.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "aewalk/spectra.hpp"

namespace aewalk {

namespace {

void check_p(double p)
{
    if (!(p > 0.0 && p < 1.0)) throw DomainError("Konno parameter must lie in (0, 1)");
}

}  // namespace

double konno_density(double x, double p)
{
    check_p(p);
    const double ax = std::abs(x);
    if (ax > p) return 0.0;
    if (ax == p) return std::numeric_limits<double>::infinity();
    return std::sqrt(1.0 - p * p) / (pi * (1.0 - x * x) * std::sqrt(p * p - x * x));
}

double konno_cdf(double x, double p)
{
    check_p(p);
    if (x <= -p) return 0.0;
    if (x >= p) return 1.0;
    return 0.5 + std::atan(std::sqrt(1.0 - p * p) * x / std::sqrt(p * p - x * x)) / pi;
}

double konno_quantile(double u, double p)
{
    check_p(p);
    if (u < 0.0 || u > 1.0) throw DomainError("quantile level outside [0, 1]");
    if (u == 0.0) return -p;
    if (u == 1.0) return p;
    const double t = std::tan(pi * (u - 0.5));
    return t * p / std::sqrt(1.0 - p * p + t * t);
}

double konno_second_moment_partial(double y, double p)
{
    check_p(p);
    y = std::clamp(y, 0.0, p);
    const double q = std::sqrt(1.0 - p * p);
    const double at = y == p ? pi / 2 : std::atan(q * y / std::sqrt(p * p - y * y));
    return (at - q * std::asin(y / p)) / pi;
}

Regime regime_of(const CoinAngles& g)
{
    if (sign_of(g.s()) == 0) return Regime::null;
    if (sign_of(g.r()) == 0) return Regime::localization;
    if (std::abs(std::abs(g.r()) - 1.0) <= sign_tolerance) return Regime::ballistic;
    return Regime::continuous_linear;
}

const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::continuous_linear: return "continuous-linear";
    case Regime::ballistic: return "ballistic";
    case Regime::localization: return "localization";
    default: return "null";
    }
}

LimitDensity::LimitDensity(const CoinAngles& g) : r_(g.r()), s_(g.s())
{
    if (regime_of(g) != Regime::continuous_linear)
        throw RegimeError(std::string("limit density needs the continuous-linear regime, got ") +
                          regime_name(regime_of(g)));
    side_ = sign_of(r_ * s_, 0.0);
}

double LimitDensity::g(double y) const
{
    if (sign_of(y, 0.0) != side_) return 0.0;
    const double p = std::abs(r_);
    return 2.0 * s_ * s_ / (r_ * r_) * y * y * konno_density(y, p);
}

double LimitDensity::zeta(double y) const
{
    const double a = std::abs(r_), b = std::abs(s_) * std::abs(y);
    return (a - b) / (a + b);
}

double LimitDensity::g(int j, double y) const
{
    if (j < 0) throw DomainError("column index must be non-negative");
    const int power = j % 2 == 0 ? j / 2 : j / 2 + 1;
    const double base = g(y);
    return base == 0.0 ? 0.0 : base * std::pow(zeta(y), power);
}

double LimitDensity::cdf(double y) const
{
    const double p = std::abs(r_);
    const double scale = 2.0 * s_ * s_ / (r_ * r_);
    if (side_ > 0) return y <= 0.0 ? 0.0 : scale * konno_second_moment_partial(y, p);
    if (y >= 0.0) return c0();
    if (y <= -p) return 0.0;
    return c0() - scale * konno_second_moment_partial(-y, p);
}

double LimitDensity::c0() const { return s_ * s_ * (1.0 - std::sqrt(1.0 - r_ * r_)) / (r_ * r_); }

double LimitDensity::total() const
{
    const double a = std::abs(r_);
    return 2.0 * std::abs(s_) * std::asin(a) / (pi * a);
}

LimitDensity limit_density(const CoinAngles& angles) { return LimitDensity(angles); }

double localization_limit(int j, TimeParity parity, const CoinAngles& g)
{
    if (regime_of(g) != Regime::localization) throw RegimeError("localization limit needs r = 0 and s != 0");
    const double s2 = g.s() * g.s();
    if (parity == TimeParity::odd) return std::abs(j) == 1 ? s2 / 4.0 : 0.0;
    if (j % 2 != 0) return 0.0;
    const double q = static_cast<double>(j) * j - 1.0;
    return 4.0 * s2 / (pi * pi * q * q);
}

BallisticLimit ballistic_limit(const CoinAngles& g)
{
    if (regime_of(g) != Regime::ballistic) throw RegimeError("ballistic limit needs |r| = 1 and s != 0");
    return BallisticLimit{sign_of(g.r() * g.s()), g.s() * g.s()};
}

double bulk_decay_density(int j, double y, const CoinAngles& angles) { return LimitDensity(angles).g(j, y); }

double edge_mass_total(const CoinAngles& angles) { return LimitDensity(angles).total(); }

std::vector<ParametricPoint> parametric_plot(const CoinAngles& angles, const std::vector<double>& kgrid)
{
    if (regime_of(angles) != Regime::continuous_linear)
        throw RegimeError("parametric plot needs the continuous-linear regime");
    std::vector<ParametricPoint> out;
    for (double k : kgrid) {
        const DispersionSample d = dispersion_sample(k, angles);
        if (!d.edge || !std::isfinite(d.edge->M)) continue;
        out.push_back({k, d.edge->v, 2.0 * d.edge->m0 * d.edge->m0 * d.edge->M / pi});
    }
    return out;
}

double inverse_konno_velocity(double k, const CoinAngles& angles)
{
    if (regime_of(angles) != Regime::continuous_linear)
        throw RegimeError("inverse Konno form needs the continuous-linear regime");
    if (k < -pi / 2 - 1e-15 || k > 1e-15) throw DomainError("inverse Konno form holds on [-pi/2, 0]");
    const double u = std::clamp(k / pi + 1.0, 0.5, 1.0);
    return sign_of(angles.r() * angles.s()) * konno_quantile(u, std::abs(angles.r()));
}

namespace {

// Fold k onto [-pi/2, 0], where |v| rises from 0 to |r|.
double fold(double k)
{
    double m = std::fmod(k + pi / 2, pi);
    if (m < 0.0) m += pi;
    return -std::abs(m - pi / 2);
}

// Linear interpolation in a non-decreasing table, clamped at both ends.
double interp(double x, const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double x0 = xs[i - 1], x1 = xs[i];
    if (x1 == x0) return ys[i];
    return ys[i - 1] + (ys[i] - ys[i - 1]) * (x - x0) / (x1 - x0);
}

std::vector<double> k_grid(int m)
{
    std::vector<double> ks(m);
    for (int i = 0; i < m; ++i) ks[i] = -pi + two_pi * i / m;
    return ks;
}

}  // namespace

double VelocityEstimate::phi(double y) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const int m = static_cast<int>(i) + 3;
        acc += m / (m - 2.0) * coefficients[i] * std::pow(y, m - 2);
    }
    return acc;
}

double VelocityEstimate::speed(double k) const { return interp(slope * (fold(k) - k0), phi_table, y_table); }

double VelocityEstimate::rms_error(const CoinAngles& angles, int m, double half_width) const
{
    double acc = 0.0;
    int count = 0;
    for (double k : k_grid(m)) {
        if (std::abs(std::abs(k) - pi / 2) <= half_width) continue;
        const double exact = std::abs(group_velocity(k, angles));
        const double d = speed(k) - exact;
        acc += d * d;
        ++count;
    }
    return std::sqrt(acc / count);
}

VelocityEstimate estimate_velocity(const std::vector<double>& y, const std::vector<double>& G,
                                   const VelocityOptions& opt)
{
    if (y.size() != G.size() || y.size() < 8) throw DomainError("cumulative curve needs matching samples");
    if (opt.order < 3) throw DomainError("fit order must be at least 3");
    VelocityEstimate est;
    est.order = opt.order;
    est.c0 = G.back();
    if (!(est.c0 > 0.0)) throw NumericError("cumulative curve carries no mass");

    std::size_t edge = 0;
    while (edge < G.size() && G[edge] < (1.0 - opt.support_fraction) * est.c0) ++edge;
    est.r_hat = y[std::min(edge, y.size() - 1)];
    const double rh = est.r_hat;
    if (!(rh > 0.0 && rh < 1.0)) throw NumericError("support edge estimate outside (0, 1)");
    est.s2 = rh * rh * est.c0 / (1.0 - std::sqrt(1.0 - rh * rh));
    est.slope = 2.0 * est.s2 / (rh * rh * pi);

    // G / u^3 against u^(m-3), u = y / r_hat: relative weighting of the cubic onset.
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] <= rh && y[i] >= opt.fit_start * rh) rows.push_back(i);
    const int terms = opt.order - 2;
    if (static_cast<int>(rows.size()) < terms) throw NumericError("too few samples for the requested fit order");
    Eigen::MatrixXd A(rows.size(), terms);
    Eigen::VectorXd b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double u = y[rows[i]] / rh;
        for (int t = 0; t < terms; ++t) A(i, t) = std::pow(u, t);
        b(i) = G[rows[i]] / (u * u * u);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    est.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(est.condition < 1e12)) throw NumericError("velocity fit is ill-conditioned");
    const Eigen::VectorXd coef = svd.solve(b);
    for (int t = 0; t < terms; ++t) est.coefficients.push_back(coef(t) / std::pow(rh, t + 3));

    // Monotone envelope of Phi on [0, r_hat] for the inversion.
    const int np = opt.table_points;
    est.y_table.resize(np);
    est.phi_table.resize(np);
    double running = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < np; ++i) {
        est.y_table[i] = rh * i / (np - 1);
        running = std::max(running, est.phi(est.y_table[i]));
        est.phi_table[i] = running;
    }

    const std::vector<double> ks = k_grid(opt.k_points);
    const double target = 2.0 * std::asin(rh) / pi;
    auto mean_speed = [&](double k0) {
        est.k0 = k0;
        double acc = 0.0;
        for (double k : ks) acc += est.speed(k);
        return acc / ks.size();
    };
    double lo = -pi, hi = 0.0;
    for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mean_speed(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    est.k0 = 0.5 * (lo + hi);
    int exhausted = 0;
    for (double k : ks)
        if (est.slope * (fold(k) - est.k0) > est.phi_table.back()) ++exhausted;
    est.coverage_gap = static_cast<double>(exhausted) / ks.size();
    return est;
}

VelocityEstimate estimate_velocity(const BoundaryDistribution& nu, int n, const VelocityOptions& opt)
{
    if (n <= 0) throw DomainError("time must be positive");
    double plus = 0.0, minus = 0.0;
    for (int j = 1; j <= nu.y_max; ++j) {
        plus += nu.at(j);
        minus += nu.at(-j);
    }
    const int dir = plus >= minus ? 1 : -1;
    std::vector<double> y, G;
    double acc = 0.0;
    for (int j = 0; j <= nu.y_max; ++j) {
        acc += nu.at(dir * j);
        y.push_back(static_cast<double>(j) / n);
        G.push_back(acc);
    }
    return estimate_velocity(y, G, opt);
}

}  // namespace aewalk

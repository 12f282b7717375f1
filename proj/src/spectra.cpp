#include "aewalk/spectra.hpp"

#include <cmath>
#include <limits>

#include "aewalk/cmv.hpp"

namespace aewalk {

double band_rho(double k, const CoinAngles& g)
{
    const double c = std::cos(g.alpha() - g.beta());
    const double ck = std::cos(k);
    const double r2 = c * c - std::sin(2.0 * g.alpha()) * std::sin(2.0 * g.beta()) * ck * ck;
    return std::sqrt(std::max(0.0, std::min(1.0, r2)));
}

namespace {

bool edge_exists(double k, const CoinAngles& g) { return sign_of(std::cos(k) * g.s()) != 0; }

}  // namespace

double group_velocity(double k, const CoinAngles& g)
{
    if (!edge_exists(k, g)) throw DomainError("no edge state at this wave number");
    const double r = g.r(), sk = std::sin(k);
    return sign_of(r * g.s(), 0.0) * std::abs(r) * std::abs(std::cos(k)) / std::sqrt(1.0 - r * r * sk * sk);
}

double theta0_second_derivative(double k, const CoinAngles& g)
{
    if (!edge_exists(k, g)) throw DomainError("no edge state at this wave number");
    const double r = g.r(), sk = std::sin(k);
    if (sign_of(sk) == 0) return 0.0;  // extremum of v at k = 0, pi
    const double q = 1.0 - r * r * sk * sk;
    return sign_of(r * g.s(), 0.0) * std::abs(r) * sign_of(std::cos(k), 0.0) * (-sk * (1.0 - r * r)) /
           (q * std::sqrt(q));
}

double effective_mass(double k, const CoinAngles& g)
{
    const double d2 = theta0_second_derivative(k, g);
    if (d2 == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(1.0 / d2);
}

DispersionSample dispersion_sample(double k, const CoinAngles& g)
{
    DispersionSample d{k, band_rho(k, g), 0.0, std::nullopt};
    d.theta_c = std::acos(d.rho);
    if (edge_exists(k, g)) {
        const double r = g.r(), s = g.s();
        const double ck = std::cos(k), sk = std::sin(k);
        const double re = -ck * s;
        const double base = std::asin(-sk * r);
        EdgePoint e{};
        e.theta0 = wrap_angle(re >= 0.0 ? base : pi - base);
        e.m0 = std::abs(ck * s) / std::sqrt(1.0 - r * r * sk * sk);
        e.v = group_velocity(k, g);
        e.M = effective_mass(k, g);
        e.lambda = edge_decay_factor(verblunsky(k, g));
        d.edge = e;
    }
    return d;
}

bool BulkArcs::contains(double theta, double slack) const
{
    const double t = wrap_angle(theta);
    for (const auto& a : arcs)
        if (t >= a[0] - slack && t <= a[1] + slack) return true;
    return false;
}

std::vector<BulkArcs> bulk_bands(const CoinAngles& g, const std::vector<double>& kgrid)
{
    std::vector<BulkArcs> out;
    out.reserve(kgrid.size());
    for (double k : kgrid) {
        const double tc = std::acos(band_rho(k, g));
        out.push_back(BulkArcs{k, tc, {{tc, pi - tc}, {pi + tc, two_pi - tc}}});
    }
    return out;
}

std::vector<std::optional<double>> edge_band(const CoinAngles& g, const std::vector<double>& kgrid)
{
    std::vector<std::optional<double>> out;
    out.reserve(kgrid.size());
    for (double k : kgrid) {
        const auto d = dispersion_sample(k, g);
        out.push_back(d.edge ? std::optional<double>(d.edge->theta0) : std::nullopt);
    }
    return out;
}

GapReport gap_analysis(const CoinAngles& g)
{
    GapReport rep{false, {}};
    if (sign_of(g.s()) == 0) {
        rep.closing_k.push_back(0.0);
        rep.closing_k.push_back(pi);
    }
    if (sign_of(g.r()) == 0) {
        rep.closing_k.push_back(pi / 2);
        rep.closing_k.push_back(3 * pi / 2);
    }
    rep.gapless = !rep.closing_k.empty();
    return rep;
}

Classification classify(const CoinAngles& g)
{
    const SignTriple t = g.signs();
    int id;
    if (t.eps2 == 0)
        id = 1;
    else if (t.eps3 == 0)
        id = 6;
    else if (t.eps2 > 0)
        id = t.eps3 > 0 ? 2 : 3;
    else
        id = t.eps3 > 0 ? 4 : 5;
    return Classification{t, id};
}

}  // namespace aewalk

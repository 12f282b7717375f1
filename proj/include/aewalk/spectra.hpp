#pragma once

#include <optional>
#include <vector>

#include "aewalk/angles.hpp"

namespace aewalk {

struct EdgePoint {
    double theta0;  // in [0, 2pi)
    double m0;
    double v;        // d theta0 / dk
    double M;        // |1 / theta0''|, +inf where theta0'' = 0
    double lambda;   // eigenvector decay factor
};

struct DispersionSample {
    double k;
    double rho;
    double theta_c;
    std::optional<EdgePoint> edge;
};

double band_rho(double k, const CoinAngles& angles);
DispersionSample dispersion_sample(double k, const CoinAngles& angles);

// Bulk quasi-energies at fixed k: [tc, pi-tc] and [pi+tc, 2pi-tc].
struct BulkArcs {
    double k;
    double theta_c;
    double arcs[2][2];
    bool contains(double theta, double slack = 0.0) const;
};

std::vector<BulkArcs> bulk_bands(const CoinAngles& angles, const std::vector<double>& kgrid);
std::vector<std::optional<double>> edge_band(const CoinAngles& angles, const std::vector<double>& kgrid);

struct GapReport {
    bool gapless;
    std::vector<double> closing_k;
};

// The bulk gap closes iff r = 0 (at k = pi/2, 3pi/2) or s = 0 (at k = 0, pi).
GapReport gap_analysis(const CoinAngles& angles);

struct Classification {
    SignTriple signs;
    int case_id;  // 1..6 of the edge-state case list
};

// (sgn s, sgn r): (0,*) -> 1, (+,+) -> 2, (+,-) -> 3, (-,+) -> 4, (-,-) -> 5, (+-,0) -> 6.
Classification classify(const CoinAngles& angles);

// Throw DomainError where no edge state exists at k.
double group_velocity(double k, const CoinAngles& angles);
double effective_mass(double k, const CoinAngles& angles);
double theta0_second_derivative(double k, const CoinAngles& angles);

}  // namespace aewalk

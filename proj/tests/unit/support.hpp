#pragma once

#include <random>

#include "aewalk/angles.hpp"

namespace testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20240917);
    return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// Angles with |r|, |s| bounded away from 0 and 1.
inline aewalk::CoinAngles generic_angles()
{
    for (;;) {
        const aewalk::CoinAngles g(uniform(0.0, aewalk::two_pi), uniform(0.0, aewalk::two_pi));
        const double r = std::abs(g.r()), s = std::abs(g.s());
        if (r > 0.05 && r < 0.95 && s > 0.05 && s < 0.95) return g;
    }
}

}  // namespace testing

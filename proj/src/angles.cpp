#include "aewalk/angles.hpp"

#include <cmath>

namespace aewalk {

int sign_of(double v, double tol)
{
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

double wrap_angle(double a)
{
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
}

CoinAngles::CoinAngles(double alpha, double beta)
    : alpha_(wrap_angle(alpha)), beta_(wrap_angle(beta))
{
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("coin angles must be finite");
    r_ = std::sin(alpha_ - beta_);
    s_ = std::sin(alpha_ + beta_);
    ca_ = std::cos(alpha_);
    sa_ = std::sin(alpha_);
    cb_ = std::cos(beta_);
    sb_ = std::sin(beta_);
}

SignTriple CoinAngles::signs() const
{
    return {sign_of(std::sin(2.0 * alpha_) * std::sin(2.0 * beta_)), sign_of(s_), sign_of(r_)};
}

std::string format_signs(const SignTriple& t)
{
    auto c = [](int e) { return e > 0 ? '+' : (e < 0 ? '-' : '0'); };
    return std::string{'(', c(t.eps1), ',', c(t.eps2), ',', c(t.eps3), ')'};
}

}  // namespace aewalk

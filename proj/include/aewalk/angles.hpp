#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aewalk {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Zero band for sign decisions on r, s and sin2a*sin2b.
inline constexpr double sign_tolerance = 1e-12;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
// Amplitude would leave the allocated window.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Horizontal-arc observable requested at odd time.
struct ParityError : std::logic_error {
    using std::logic_error::logic_error;
};
// Limit law requested outside its parameter regime.
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int sign_of(double v, double tol = sign_tolerance);

// Reduce to [0, 2pi).
double wrap_angle(double a);

struct SignTriple {
    int eps1;  // sgn(sin2a sin2b)
    int eps2;  // sgn s
    int eps3;  // sgn r
};

class CoinAngles {
public:
    CoinAngles() = default;
    CoinAngles(double alpha, double beta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double r() const { return r_; }  // sin(a - b)
    double s() const { return s_; }  // sin(a + b)
    SignTriple signs() const;

    double cos_alpha() const { return ca_; }
    double sin_alpha() const { return sa_; }
    double cos_beta() const { return cb_; }
    double sin_beta() const { return sb_; }

private:
    double alpha_ = 0.0, beta_ = 0.0;
    double r_ = 0.0, s_ = 0.0;
    double ca_ = 1.0, sa_ = 0.0, cb_ = 1.0, sb_ = 0.0;
};

std::string format_signs(const SignTriple& t);

}  // namespace aewalk

#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "aewalk/cmv.hpp"
#include "aewalk/halfline.hpp"
#include "support.hpp"

using namespace aewalk;

namespace {

cplx random_eta(double max_abs = 0.95)
{
    const double r = std::sqrt(testing::uniform(0.0, 1.0)) * max_abs;
    return std::polar(r, testing::uniform(0, two_pi));
}

// (C^n)_{00} on a plain truncation large enough that the cut is never reached.
cplx matrix_moment(cplx eta, int n)
{
    const CMVOperator c = build_cmv(eta, 2 * n + 8);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(c.size);
    v(0) = 1.0;
    for (int t = 0; t < n; ++t) v = c.matrix * v;
    return v(0);
}

}  // namespace

TEST_CASE("CMV structure")
{
    const cplx eta(0.3, -0.4);
    const CMVOperator u = build_cmv(eta, 40, Truncation::unitary);
    CHECK((u.matrix * u.matrix.adjoint() - Eigen::MatrixXcd::Identity(40, 40)).norm() < 1e-13);
    const CMVOperator u_odd = build_cmv(eta, 41, Truncation::unitary);
    CHECK((u_odd.matrix * u_odd.matrix.adjoint() - Eigen::MatrixXcd::Identity(41, 41)).norm() < 1e-13);
    const CMVOperator p = build_cmv(eta, 40);
    // Five-diagonal: nothing beyond distance 2 from the diagonal.
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j)
            if (std::abs(i - j) > 2) CHECK(p.matrix(i, j) == cplx(0.0));
    CHECK(p.matrix(0, 0) == std::conj(eta));
    CHECK(p.rho == doctest::Approx(std::sqrt(1 - std::norm(eta))));
    CHECK_THROWS_AS(build_cmv(eta, 3), DomainError);
    CHECK_THROWS_AS(build_cmv(cplx(0.9, 0.9), 10), DomainError);
}

TEST_CASE("Verblunsky parameter is the conjugate of the coin's off-diagonal entry")
{
    for (int t = 0; t < 50; ++t) {
        const CoinAngles g = testing::generic_angles();
        const double k = testing::uniform(0, two_pi);
        CHECK(std::abs(verblunsky(k, g) - std::conj(coin_matrix(k, g)(0, 1))) < 1e-15);
    }
}

TEST_CASE("Lambda conjugates the CMV matrix into the half-line walk")
{
    for (int trial = 0; trial < 20; ++trial) {
        const CoinAngles g = testing::generic_angles();
        const double k = testing::uniform(0, two_pi);
        const int n = 30;
        const HalfLineState direct = halfline_evolve(halfline_initial(k, n + 1), g, n);
        const std::vector<cplx> f0 = lambda_map(halfline_initial(k, n + 1), g);
        const CMVOperator c = build_cmv(verblunsky(k, g), static_cast<int>(f0.size()));
        Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(f0.data(), f0.size());
        const Eigen::MatrixXcd T = c.matrix.transpose();
        for (int t = 0; t < n; ++t) v = T * v;
        const HalfLineState back = lambda_inverse(std::vector<cplx>(v.data(), v.data() + v.size()), k, g);
        double m = 0.0;
        for (int x = 0; x <= n; ++x)
            for (int cc = 0; cc < 2; ++cc) m = std::max(m, std::abs(back.at(x, cc) - direct.at(x, cc)));
        CHECK(m < 1e-12);
    }
    CHECK_THROWS_AS(lambda_inverse(std::vector<cplx>(3), 0.1, CoinAngles(0.1, 0.2)), DomainError);
}

TEST_CASE("spectral measure: masses against an independent quadrature")
{
    boost::math::quadrature::tanh_sinh<double> ts;
    for (int trial = 0; trial < 30; ++trial) {
        const cplx eta = random_eta();
        const SpectralMeasure mu(eta);
        const double rho = mu.rho();
        const double tc = std::acos(rho);
        auto w = [&](double t) { return mu.weight(t) / two_pi; };
        const double ac = ts.integrate(w, tc, pi - tc) + ts.integrate(w, pi + tc, two_pi - tc);
        CHECK(mu.ac_mass() == doctest::Approx(ac).epsilon(1e-9));
        const double m0 = mu.point() ? mu.point()->m0 : 0.0;
        CHECK(ac + m0 == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("spectral moments equal CMV matrix powers")
{
    for (int trial = 0; trial < 20; ++trial) {
        const cplx eta = random_eta();
        const SpectralMeasure mu(eta);
        for (int n : {0, 1, 2, 5, 17, 40}) CHECK(std::abs(mu.moment(n) - matrix_moment(eta, n)) < 1e-10);
    }
}

TEST_CASE("return amplitude equals the half-line boundary amplitude")
{
    for (int trial = 0; trial < 20; ++trial) {
        const CoinAngles g = testing::generic_angles();
        const double k = testing::uniform(0, two_pi);
        for (int n : {1, 6, 25}) CHECK(std::abs(return_amplitude(g, k, n) - boundary_amplitude_hat(g, k, n)) < 1e-10);
    }
}

TEST_CASE("point mass against the unitary truncation eigen-solve")
{
    for (int trial = 0; trial < 10; ++trial) {
        cplx eta = random_eta(0.9);
        if (std::abs(eta.real()) < 0.1) eta += 0.2;
        const auto pm = point_mass_of(eta);
        REQUIRE(pm.has_value());
        const CMVOperator c = build_cmv(eta, 200, Truncation::unitary);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c.matrix);
        const cplx target = std::polar(1.0, pm->theta0);
        double best = 1e9;
        for (int i = 0; i < 200; ++i) best = std::min(best, std::abs(es.eigenvalues()(i) - target));
        CHECK(best < 1e-8);
        // Outside the bands.
        CHECK(std::abs(std::cos(pm->theta0)) > c.rho);
    }
}

TEST_CASE("edge eigenvector")
{
    for (int trial = 0; trial < 20; ++trial) {
        cplx eta = random_eta(0.9);
        if (std::abs(eta.real()) < 0.1) continue;
        const EdgeEigenvector e = edge_eigenvector(eta, 400);
        CHECK(e.residual <= e.tolerance);
        CHECK(std::abs(e.lambda) < 1.0);
        CHECK(std::norm(e.vector(0)) / e.vector.squaredNorm() ==
              doctest::Approx(point_mass_of(eta)->m0).epsilon(1e-10));
        // |x_{2j+2}|^2 / |x_{2j}|^2 = lambda^2.
        CHECK(std::norm(e.vector(4) / e.vector(2)) == doctest::Approx(e.lambda * e.lambda).epsilon(1e-12));
    }
    CHECK_THROWS_AS(edge_eigenvector(cplx(0.0, 0.3), 20), DomainError);
}

TEST_CASE("degenerate and trivial parameters")
{
    const cplx unit = std::polar(1.0, 0.7);
    const auto pm = point_mass_of(unit);
    REQUIRE(pm.has_value());
    CHECK(pm->m0 == 1.0);
    CHECK(pm->theta0 == doctest::Approx(wrap_angle(-0.7)));
    CHECK(std::abs(SpectralMeasure(unit).moment(3) - std::polar(1.0, -2.1)) < 1e-14);
    CHECK_FALSE(point_mass_of(cplx(0.0, 0.5)).has_value());
    CHECK_FALSE(point_mass_of(cplx(0.0, 0.0)).has_value());
    CHECK(SpectralMeasure(0.0).ac_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(SpectralMeasure(cplx(1.0, 0.5)), DomainError);
}

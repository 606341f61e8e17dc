#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/chi_squared.hpp>

#include "seasearch/estimation.hpp"

using namespace seasearch;
using namespace seasearch::estimation;

TEST_CASE("low-pass with alpha 1 passes the sample through")
{
    CHECK(lowpass(3.0, 7.5, 1.0) == 7.5);
}

TEST_CASE("low-pass converges geometrically with unit DC gain")
{
    for (double alpha : {0.05, 0.3, 0.9}) {
        double y = -4.0;
        for (int n = 1; n <= 40; ++n) {
            y = lowpass(y, 2.0, alpha);
            CHECK(std::abs(y - 2.0) == doctest::Approx(std::pow(1.0 - alpha, n) * 6.0).epsilon(1e-9));
        }
        CHECK(lowpass(5.0, 5.0, alpha) == doctest::Approx(5.0).epsilon(1e-15));
    }
}

TEST_CASE("low-pass unit step after 22 steps")
{
    double y = 0.0;
    for (int i = 0; i < 22; ++i) y = lowpass(y, 1.0, 0.1);
    CHECK(y == doctest::Approx(1.0 - std::pow(0.9, 22)).epsilon(1e-12));
    CHECK(y == doctest::Approx(0.902).epsilon(1e-3));
}

TEST_CASE("prediction substitutes into the constant-acceleration block")
{
    LkfState s;
    s.chi << 0, 1, 2, 0, 0, 0;
    const auto n = lkf_predict(s, 1.0);
    Vector6 expect;
    expect << 2, 3, 2, 0, 0, 0;
    CHECK((n.chi - expect).norm() < 1e-15);
}

TEST_CASE("prediction over a vanishing step is the identity")
{
    LkfState s;
    s.chi << 3, -1, 0.5, 7, 2, -0.25;
    const auto n = lkf_predict(s, 1e-12);
    CHECK((n.chi - s.chi).norm() < 1e-9);
}

TEST_CASE("predictions follow an exact constant-acceleration trajectory")
{
    const double x0 = 10.0, vx0 = 3.0, ax = 0.4, y0 = -5.0, vy0 = -1.0, ay = 0.1;
    LkfState s;
    s.chi << x0, vx0, ax, y0, vy0, ay;
    for (int t = 1; t <= 60; ++t) {
        s = lkf_predict(s, 1.0);
        CHECK(std::abs(s.chi[X] - (x0 + vx0 * t + 0.5 * ax * t * t)) < 1e-9);
        CHECK(std::abs(s.chi[Y] - (y0 + vy0 * t + 0.5 * ay * t * t)) < 1e-9);
    }
}

TEST_CASE("huge R leaves the prior, tiny R adopts the measurement")
{
    LkfState s;
    s.chi << 1, 2, 3, 4, 5, 6;
    s.cov = diagonal_noise(4.0, 1.0, 0.5);
    Vector6 z;
    z << -10, 0, 0, 30, 1, 1;
    s.r = Matrix6::Identity() * 1e12;
    CHECK((lkf_update(s, z).chi - s.chi).norm() < 1e-9 * 100.0);
    s.r = Matrix6::Identity() * 1e-12;
    CHECK((lkf_update(s, z).chi - z).norm() < 1e-9);
}

TEST_CASE("zero innovation on exact constant-acceleration truth with Q = 0")
{
    Vector6 truth;
    truth << 0, 25, 0.3, 100, -4, 0.05;
    LkfState s;
    s.chi = truth;
    s.q.setZero();
    s.r = diagonal_noise(9.0, 18.0, 0.01);
    const Matrix6 f = transition(1.0);
    for (int k = 0; k < 200; ++k) {
        truth = f * truth;
        s = lkf_predict(s, 1.0);
        Innovation innov;
        s = lkf_update(s, truth, &innov);
        CHECK(innov.nu.cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("tracker velocity pseudo-measurement is exact on accelerating truth")
{
    // Zero process noise and an exact start: innovations after the first two fixes vanish.
    TrackerConfig cfg;
    cfg.q_pos = cfg.q_vel = cfg.q_acc = 0.0;
    PositionTracker tr(cfg);
    const Vec2 p0(0, 0), v0(20, 5), a(0.5, -0.2);
    auto pos = [&](double t) { return p0 + v0 * t + 0.5 * a * t * t; };
    tr.reset(p0, v0, 1e-6);
    for (int k = 1; k <= 30; ++k) {
        tr.predict(1.0);
        const auto innov = tr.correct_fix(pos(k), 1e-6, a, k);
        if (k > 2) {
            CHECK(std::abs(innov.nu[X]) < 1e-6);
            CHECK(std::abs(innov.nu[VX]) < 1e-6);
        }
    }
    CHECK((tr.position() - pos(30)).norm() < 1e-6);
    CHECK((tr.velocity() - (v0 + a * 30.0)).norm() < 1e-6);
}

TEST_CASE("static UAV: 3 m fixes at 1 Hz give sub-metre RMSE over the last minute")
{
    // 50 Hz accelerometer samples between the fixes, as in flight.
    std::mt19937_64 rng(42);
    std::normal_distribution<double> noise(0.0, 3.0);
    std::normal_distribution<double> imu(0.0, 0.02);
    const Vec2 truth(100, 50);
    double sq = 0.0;
    int count = 0;
    for (int run = 0; run < 100; ++run) {
        PositionTracker tr;
        tr.reset(truth + Vec2(noise(rng), noise(rng)), {0, 0}, 3.0);
        for (int t = 1; t <= 120; ++t) {
            Vec2 acc(0, 0);
            for (int k = 0; k < 50; ++k) {
                tr.predict(0.02);
                acc = Vec2(imu(rng), imu(rng));
                tr.correct_acceleration(acc);
            }
            tr.correct_fix(truth + Vec2(noise(rng), noise(rng)), 3.0, acc, t);
            if (t > 60) {
                sq += (tr.position() - truth).squaredNorm();
                ++count;
            }
        }
    }
    CHECK(std::sqrt(sq / count) < 1.0);
}

TEST_CASE("NIS over 1000 steps lies in the 95% chi-square band")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01(0.0, 1.0);
    const Matrix6 q = diagonal_noise(0.05, 0.02, 0.01);
    const Matrix6 r = diagonal_noise(9.0, 4.0, 0.04);
    const Matrix6 f = transition(1.0);
    Vector6 truth;
    truth << 0, 10, 0, 0, -5, 0;
    LkfState s;
    s.chi = truth;
    s.cov.setZero();
    s.q = q;
    s.r = r;
    const int steps = 1000;
    double nis_sum = 0.0;
    for (int k = 0; k < steps; ++k) {
        Vector6 w, v;
        for (int i = 0; i < 6; ++i) {
            w[i] = std::sqrt(q(i, i)) * n01(rng);
            v[i] = std::sqrt(r(i, i)) * n01(rng);
        }
        truth = f * truth + w;
        s = lkf_predict(s, 1.0);
        Innovation innov;
        s = lkf_update(s, truth + v, &innov);
        nis_sum += innov.nis;

        const Eigen::SelfAdjointEigenSolver<Matrix6> eig(s.cov);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
        CHECK((s.cov - s.cov.transpose()).norm() == 0.0);
    }
    const boost::math::chi_squared dist(6.0 * steps);
    CHECK(nis_sum >= boost::math::quantile(dist, 0.025));
    CHECK(nis_sum <= boost::math::quantile(dist, 0.975));
}

TEST_CASE("barometer: calibration point reads zero")
{
    CHECK(baro_altitude(101325.0, 101325.0) == doctest::Approx(0.0));
}

TEST_CASE("barometer recovers 100 m from an ISA pressure sample")
{
    // Standard atmosphere troposphere: p = p0 (1 - L h / T0)^(g M / (R L)).
    const double lapse = 0.0065, t0 = 288.15, exponent = 9.80665 * 0.0289644 / (8.3144598 * lapse);
    const double p = 101325.0 * std::pow(1.0 - lapse * 100.0 / t0, exponent);
    CHECK(std::abs(baro_altitude(p, 101325.0) - 100.0) < 0.5);
    BaroAltimeter baro(101325.0, 0.2);
    double h = 0.0;
    for (int i = 0; i < 200; ++i) h = baro.update(p);
    CHECK(std::abs(h - 100.0) < 0.5);
}

TEST_CASE("barometer altitude is strictly decreasing in pressure")
{
    double prev = baro_altitude(110000.0, 101325.0);
    for (double p = 109900.0; p > 80000.0; p -= 100.0) {
        const double h = baro_altitude(p, 101325.0);
        CHECK(h > prev);
        prev = h;
    }
}

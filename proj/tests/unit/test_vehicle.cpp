#include "doctest.h"

#include <cmath>

#include "seasearch/vehicle.hpp"

using namespace seasearch;
using namespace seasearch::vehicle;

namespace {

FixedWingState level(double v, double psi = 0.0)
{
    FixedWingState s;
    s.v = v;
    s.psi = psi;
    s.h = 100.0;
    return s;
}

} // namespace

TEST_CASE("identity velocity curve maps P=25 to 25 m/s")
{
    CHECK(prop_speed_to_velocity(25.0, VelocityCurve{}) == doctest::Approx(25.0));
}

TEST_CASE("propeller speed below stall output clamps to v_min")
{
    const VelocityCurve quadratic{{-5.0, 0.1, 0.01}};
    CHECK(prop_speed_to_velocity(0.0, quadratic) == 15.0);
    CHECK(prop_speed_to_velocity(3.0, VelocityCurve{}) == 15.0);
    CHECK(prop_speed_to_velocity(1e4, VelocityCurve{}) == 30.0);
}

TEST_CASE("affine least-squares fit reproduces exact samples")
{
    // Samples generated by V = 4 + 0.75 P, so the residual of the fit is zero.
    std::vector<double> p{10.0, 15.0, 20.0, 25.0, 30.0};
    std::vector<double> v;
    for (double x : p) v.push_back(4.0 + 0.75 * x);
    const auto curve = VelocityCurve::fit(p, v, 1);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(curve.evaluate(p[i]) - v[i]) < 1e-9);
    CHECK(curve.coefficients[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(curve.coefficients[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("inverse velocity map round-trips")
{
    const VelocityCurve curve{{2.0, 0.8}};
    const double p = velocity_to_prop_speed(22.0, curve);
    CHECK(p == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("pure proportional PID")
{
    PidState st;
    CHECK(pid_step({1.0, 0.0, 0.0, 1.0}, 0.1, 0.02, st) == doctest::Approx(0.1));
}

TEST_CASE("integral term pins at its clamp")
{
    PidState st;
    const PidGains g{0.0, 0.5, 0.0, 0.4};
    double out = 0.0;
    for (int i = 0; i < 100; ++i) out = pid_step(g, 1.0, 0.02, st);
    // Unclamped the term would be 0.5 * 100 * 0.02 = 1.0.
    CHECK(out == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(g.ki * st.integral == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("controller at its references commands zero attitude")
{
    const VehicleConfig cfg;
    ControllerState ctrl;
    const auto s = level(25.0, 0.3);
    const auto u = attitude_controller(s, {100.0, 0.3, 25.0, 0.0}, cfg, 0.02, ctrl);
    CHECK(u.phi_cmd == 0.0);
    CHECK(u.theta_cmd == 0.0);
    CHECK(u.prop_speed == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("positive heading error banks toward increasing heading")
{
    const VehicleConfig cfg;
    ControllerState ctrl;
    const auto s = level(25.0, 1.0);
    const auto u = attitude_controller(s, {100.0, 1.1, 25.0, 0.0}, cfg, 0.02, ctrl);
    CHECK(u.phi_cmd > 0.0);
}

TEST_CASE("controller outputs saturate for huge errors")
{
    const VehicleConfig cfg;
    ControllerState ctrl;
    auto s = level(25.0, 0.0);
    s.h = -1e6;
    for (int i = 0; i < 50; ++i) {
        const auto u = attitude_controller(s, {1e6, kPi, 25.0, 3.0}, cfg, 0.02, ctrl);
        CHECK(std::abs(u.phi_cmd) <= cfg.limits.phi_max);
        CHECK(std::abs(u.theta_cmd) <= cfg.limits.theta_max);
    }
}

TEST_CASE("closed-loop 90 degree heading change settles within 2 degrees before 30 s")
{
    const VehicleConfig cfg;
    ControllerState ctrl;
    auto s = level(25.0, 0.0);
    const double dt = 0.02;
    const double ref = kPi / 2.0;
    double last_outside = 0.0;
    for (int k = 1; k <= 15000; ++k) {
        const auto u = attitude_controller(s, {100.0, ref, 25.0, 0.0}, cfg, dt, ctrl);
        s = fixed_wing_step(s, u, dt, cfg);
        if (std::abs(wrap_angle(s.psi - ref)) > deg2rad(2.0)) last_outside = k * dt;
        if (k == 3000) CHECK(std::abs(wrap_angle(s.psi - ref)) <= deg2rad(2.0));
    }
    CHECK(last_outside < 30.0);
    // Zero steady-state error for a constant reference.
    CHECK(std::abs(wrap_angle(s.psi - ref)) < 1e-3);
}

TEST_CASE("straight level flight for one second")
{
    const auto s = level(25.0, 0.0);
    const auto n = fixed_wing_step(s, {0.0, 0.0, 25.0}, 1.0);
    CHECK(n.x == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(n.y == doctest::Approx(0.0));
    CHECK(n.h == doctest::Approx(100.0));
    CHECK(n.psi == 0.0);
}

TEST_CASE("turn rate and radius at 45 degrees bank")
{
    VehicleConfig cfg;
    cfg.limits.phi_max = deg2rad(50.0);
    auto s = level(25.0, 0.0);
    s.phi = deg2rad(45.0);
    const ControlInputs u{deg2rad(45.0), 0.0, 25.0};
    const double dt = 0.02;
    double unwrapped = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto n = fixed_wing_step(s, u, dt, cfg);
        unwrapped += wrap_angle(n.psi - s.psi);
        s = n;
    }
    const double rate = unwrapped / 10.0;
    const double analytic_rate = 9.81 / 25.0; // g tan(45 deg) / V
    CHECK(std::abs(rate - analytic_rate) / analytic_rate < 0.01);
    CHECK(25.0 / rate == doctest::Approx(625.0 / 9.81).epsilon(0.01));
    CHECK(min_turn_radius(25.0, {}) == doctest::Approx(625.0 / (9.81 * std::tan(deg2rad(35.0)))));
}

TEST_CASE("constant turn at 0.1 rad/s closes the circle")
{
    auto s = level(25.0, 0.0);
    s.phi = std::atan(0.1 * 25.0 / 9.81);
    const ControlInputs u{s.phi, 0.0, 25.0};
    const double dt = 0.01;
    double unwrapped = 0.0;
    for (int k = 0; k < 6283; ++k) {
        const auto n = fixed_wing_step(s, u, dt);
        unwrapped += wrap_angle(n.psi - s.psi);
        s = n;
    }
    CHECK(unwrapped == doctest::Approx(0.1 * 62.83).epsilon(1e-9));
    CHECK(std::hypot(s.x, s.y) < 1.0);
}

TEST_CASE("heading stays wrapped and step length equals V dt")
{
    auto s = level(25.0, 3.1);
    const ControlInputs u{deg2rad(30.0), 0.0, 25.0};
    for (int k = 0; k < 2000; ++k) {
        const auto n = fixed_wing_step(s, u, 0.02);
        CHECK(n.psi > -kPi);
        CHECK(n.psi <= kPi);
        CHECK(std::abs(std::hypot(n.x - s.x, n.y - s.y) - n.v * 0.02) < 1e-9);
        s = n;
    }
}

#include "seasearch/vehicle.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace seasearch::vehicle {

double VelocityCurve::evaluate(double prop_speed) const
{
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * prop_speed + *it;
    return acc;
}

VelocityCurve VelocityCurve::fit(const std::vector<double> &prop_speeds, const std::vector<double> &velocities,
                                 int degree)
{
    if (prop_speeds.size() != velocities.size() || prop_speeds.size() < static_cast<std::size_t>(degree + 1))
        throw std::invalid_argument("VelocityCurve::fit: need at least degree+1 matching samples");
    const auto n = static_cast<Eigen::Index>(prop_speeds.size());
    Eigen::MatrixXd a(n, degree + 1);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            a(i, k) = p;
            p *= prop_speeds[static_cast<std::size_t>(i)];
        }
        b(i) = velocities[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    return VelocityCurve{std::vector<double>(c.data(), c.data() + c.size())};
}

double prop_speed_to_velocity(double prop_speed, const VelocityCurve &curve, const Limits &limits)
{
    return std::clamp(curve.evaluate(std::max(prop_speed, 0.0)), limits.v_min, limits.v_max);
}

double velocity_to_prop_speed(double v, const VelocityCurve &curve)
{
    double lo = 0.0;
    double hi = 1.0;
    if (curve.evaluate(lo) >= v) return 0.0;
    int guard = 0;
    while (curve.evaluate(hi) < v) {
        hi *= 2.0;
        if (++guard > 60) throw std::runtime_error("velocity_to_prop_speed: curve never reaches requested speed");
    }
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (curve.evaluate(mid) < v ? lo : hi) = mid;
    }
    return hi;
}

double pid_step(const PidGains &gains, double error, double dt, PidState &state)
{
    double integral = state.integral + error * dt;
    if (gains.ki != 0.0) {
        const double bound = gains.integral_clamp / std::abs(gains.ki);
        integral = std::clamp(integral, -bound, bound);
    }
    const double derivative = state.primed ? (error - state.prev_error) / dt : 0.0;
    state.prev_error = error;
    state.primed = true;
    // Conditional integration: hold the integrator while the output saturates in the error's direction.
    const double trial = gains.kp * error + gains.ki * integral + gains.kd * derivative;
    if (!(std::abs(trial) > gains.output_limit && trial * error > 0.0)) state.integral = integral;
    const double out = gains.kp * error + gains.ki * state.integral + gains.kd * derivative;
    return std::clamp(out, -gains.output_limit, gains.output_limit);
}

ControlInputs attitude_controller(const FixedWingState &state, const References &refs, const VehicleConfig &config,
                                  double dt, ControllerState &ctrl)
{
    const auto &lim = config.limits;
    ControlInputs u;
    const double heading_error = wrap_angle(refs.psi_ref - state.psi);
    u.phi_cmd = std::clamp(pid_step(config.gains.heading, heading_error, dt, ctrl.heading) + refs.roll_ff,
                           -lim.phi_max, lim.phi_max);
    u.theta_cmd = std::clamp(pid_step(config.gains.altitude, refs.h_ref - state.h, dt, ctrl.altitude),
                             -lim.theta_max, lim.theta_max);
    u.prop_speed = velocity_to_prop_speed(std::clamp(refs.v_ref, lim.v_min, lim.v_max), config.curve);
    return u;
}

namespace {

double lag(double current, double target, double tau, double dt)
{
    if (tau <= 0.0) return target;
    return current + (target - current) * (1.0 - std::exp(-dt / tau));
}

} // namespace

FixedWingState fixed_wing_step(const FixedWingState &state, const ControlInputs &inputs, double dt,
                               const VehicleConfig &config)
{
    const auto &lim = config.limits;
    FixedWingState next = state;
    next.phi = std::clamp(lag(state.phi, std::clamp(inputs.phi_cmd, -lim.phi_max, lim.phi_max), config.lags.roll_tau, dt),
                          -lim.phi_max, lim.phi_max);
    next.theta = std::clamp(
        lag(state.theta, std::clamp(inputs.theta_cmd, -lim.theta_max, lim.theta_max), config.lags.pitch_tau, dt),
        -lim.theta_max, lim.theta_max);
    next.v = std::clamp(lag(state.v, prop_speed_to_velocity(inputs.prop_speed, config.curve, lim), config.lags.speed_tau, dt),
                        lim.v_min, lim.v_max);

    // Mid-point heading keeps constant-rate turns on the circle.
    const double psi_rate = kGravity / next.v * std::tan(next.phi);
    const double psi_mid = state.psi + 0.5 * psi_rate * dt;
    next.x = state.x + next.v * std::cos(psi_mid) * dt;
    next.y = state.y + next.v * std::sin(psi_mid) * dt;
    next.h = state.h + next.v * std::sin(next.theta) * dt;
    next.psi = wrap_angle(state.psi + psi_rate * dt);
    return next;
}

} // namespace seasearch::vehicle

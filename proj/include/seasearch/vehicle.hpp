#pragma once

#include <vector>

#include "seasearch/geometry.hpp"

namespace seasearch::vehicle {

/// Kinematic state of one fixed-wing UAV. Angles in radians, heading in (-pi, pi],
/// measured counter-clockwise from +x. Positive roll turns toward increasing heading.
struct FixedWingState {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
    double psi = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    double v = 0.0;

    Vec2 position() const { return {x, y}; }
};

struct ControlInputs {
    double phi_cmd = 0.0;
    double theta_cmd = 0.0;
    double prop_speed = 0.0; ///< propeller angular velocity, rad/s
};

struct Limits {
    double phi_max = deg2rad(35.0);
    double theta_max = deg2rad(20.0);
    double v_min = 15.0;
    double v_max = 30.0;
};

/// Polynomial map from propeller speed to airspeed, coefficients in increasing power.
struct VelocityCurve {
    std::vector<double> coefficients{0.0, 1.0};

    double evaluate(double prop_speed) const;
    /// Least-squares polynomial of the given degree through (P, V) samples.
    static VelocityCurve fit(const std::vector<double> &prop_speeds, const std::vector<double> &velocities,
                             int degree);
};

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double integral_clamp = 1.0; ///< bound on |ki * integral|
    double output_limit = 1e300;
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
    bool primed = false;
};

/// First-order actuator lag time constants.
struct Lags {
    double roll_tau = 0.3;
    double pitch_tau = 0.5;
    double speed_tau = 1.0;
};

struct ControllerGains {
    PidGains heading{1.2, 0.02, 0.15, deg2rad(5.0), deg2rad(35.0)};
    PidGains altitude{0.02, 0.002, 0.01, deg2rad(3.0), deg2rad(20.0)};
};

struct References {
    double h_ref = 100.0;
    double psi_ref = 0.0;
    double v_ref = 25.0;
    double roll_ff = 0.0; ///< feed-forward bank angle for curved paths
};

struct ControllerState {
    PidState heading;
    PidState altitude;
};

struct VehicleConfig {
    Limits limits;
    Lags lags;
    ControllerGains gains;
    VelocityCurve curve;
};

/// Airspeed for a propeller speed, clamped to [v_min, v_max].
double prop_speed_to_velocity(double prop_speed, const VelocityCurve &curve, const Limits &limits = {});

/// Smallest propeller speed whose (unclamped) curve output reaches v. Assumes a monotone curve.
double velocity_to_prop_speed(double v, const VelocityCurve &curve);

/// One PID update with integral-term clamp and output saturation.
double pid_step(const PidGains &gains, double error, double dt, PidState &state);

ControlInputs attitude_controller(const FixedWingState &state, const References &refs, const VehicleConfig &config,
                                  double dt, ControllerState &ctrl);

/// Coordinated-turn kinematics with first-order lags on roll, pitch and speed.
FixedWingState fixed_wing_step(const FixedWingState &state, const ControlInputs &inputs, double dt,
                               const VehicleConfig &config = {});

/// Minimum turn radius V^2 / (g tan(phi_max)).
inline double min_turn_radius(double v, const Limits &limits)
{
    return v * v / (kGravity * std::tan(limits.phi_max));
}

} // namespace seasearch::vehicle

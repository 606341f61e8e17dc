#pragma once

#include <optional>

#include <Eigen/Core>

#include "seasearch/geometry.hpp"

namespace seasearch::estimation {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// State layout [x, vx, ax, y, vy, ay].
enum Channel : int { X = 0, VX = 1, AX = 2, Y = 3, VY = 4, AY = 5 };

struct LkfState {
    Vector6 chi = Vector6::Zero();
    Matrix6 cov = Matrix6::Identity();
    Matrix6 q = Matrix6::Zero(); ///< process noise added per prediction
    Matrix6 r = Matrix6::Identity();
};

/// Diagonal process noise [pos, vel, acc] repeated for both axes.
Matrix6 diagonal_noise(double pos, double vel, double acc);

/// Constant-acceleration transition block-diag(C, C).
Matrix6 transition(double dt);

LkfState lkf_predict(const LkfState &state, double dt);

struct Innovation {
    Vector6 nu = Vector6::Zero();
    Matrix6 s = Matrix6::Identity();
    double nis = 0.0; ///< nu^T S^-1 nu
};

/// Kalman correction with H = I using state.r as the measurement covariance.
LkfState lkf_update(const LkfState &state, const Vector6 &z, Innovation *innovation = nullptr);

/// First-order exponential low-pass y' = alpha * x + (1 - alpha) * y.
inline double lowpass(double prev, double sample, double alpha) { return alpha * sample + (1.0 - alpha) * prev; }

class LowPass {
public:
    explicit LowPass(double alpha = 1.0) : alpha_(alpha) {}
    double update(double sample)
    {
        value_ = primed_ ? lowpass(value_, sample, alpha_) : sample;
        primed_ = true;
        return value_;
    }
    double value() const { return value_; }

private:
    double alpha_;
    double value_ = 0.0;
    bool primed_ = false;
};

/// International standard atmosphere pressure (Pa) at altitude h above the calibration point.
double pressure_at_altitude(double h, double reference_pressure);

/// Altitude above the calibration point from a raw pressure sample.
double baro_altitude(double pressure, double reference_pressure);

class BaroAltimeter {
public:
    BaroAltimeter(double reference_pressure, double alpha) : reference_(reference_pressure), filter_(alpha) {}
    double update(double pressure) { return filter_.update(baro_altitude(pressure, reference_)); }
    double altitude() const { return filter_.value(); }

private:
    double reference_;
    LowPass filter_;
};

struct TrackerConfig {
    double q_pos = 1e-4;
    double q_vel = 1e-5;
    double q_acc = 1e-2;
    double q_reference_dt = 1.0; ///< Q above is per this interval; scaled linearly by dt
    double acc_sigma = 0.02;     ///< IMU acceleration noise after low-pass, m/s^2
    double unobserved_variance = 1e12;
};

/// Per-UAV horizontal tracker: LKF plus the pseudo-measurement bookkeeping that
/// fills the velocity channels from successive position fixes.
class PositionTracker {
public:
    explicit PositionTracker(TrackerConfig config = {});

    void reset(const Vec2 &position, const Vec2 &velocity, double position_sigma);
    void predict(double dt);
    /// Acceleration-only correction; position and velocity channels are unobserved.
    void correct_acceleration(const Vec2 &acc_world);
    /// Full correction from a localization fix with standard deviation sigma.
    Innovation correct_fix(const Vec2 &fix, double sigma, const Vec2 &acc_world, double t);

    const LkfState &state() const { return state_; }
    Vec2 position() const { return {state_.chi[X], state_.chi[Y]}; }
    Vec2 velocity() const { return {state_.chi[VX], state_.chi[VY]}; }

private:
    TrackerConfig config_;
    LkfState state_;
    std::optional<Vec2> last_fix_;
    double last_fix_t_ = 0.0;
    double last_fix_sigma_ = 0.0;
};

} // namespace seasearch::estimation

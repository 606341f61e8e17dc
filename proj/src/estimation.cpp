#include "seasearch/estimation.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace seasearch::estimation {

namespace {

constexpr double kIsaLapse = 2.25577e-5;
constexpr double kIsaExponent = 5.25588;

} // namespace

Matrix6 diagonal_noise(double pos, double vel, double acc)
{
    Vector6 d;
    d << pos, vel, acc, pos, vel, acc;
    return d.asDiagonal();
}

Matrix6 transition(double dt)
{
    Eigen::Matrix3d c;
    c << 1.0, dt, 0.5 * dt * dt, 0.0, 1.0, dt, 0.0, 0.0, 1.0;
    Matrix6 f = Matrix6::Zero();
    f.topLeftCorner<3, 3>() = c;
    f.bottomRightCorner<3, 3>() = c;
    return f;
}

LkfState lkf_predict(const LkfState &state, double dt)
{
    const Matrix6 f = transition(dt);
    LkfState next = state;
    next.chi = f * state.chi;
    next.cov = f * state.cov * f.transpose() + state.q;
    next.cov = (0.5 * (next.cov + next.cov.transpose())).eval();
    return next;
}

LkfState lkf_update(const LkfState &state, const Vector6 &z, Innovation *innovation)
{
    // H = I: S = P + R, K = P S^-1.
    const Vector6 nu = z - state.chi;
    const Matrix6 s = state.cov + state.r;
    const Eigen::LDLT<Matrix6> s_ldlt(s);
    const Matrix6 k = s_ldlt.solve(state.cov).transpose(); // P symmetric, S symmetric
    LkfState next = state;
    next.chi = state.chi + k * nu;
    // Joseph form keeps the covariance symmetric positive semidefinite.
    const Matrix6 i_k = Matrix6::Identity() - k;
    next.cov = i_k * state.cov * i_k.transpose() + k * state.r * k.transpose();
    next.cov = (0.5 * (next.cov + next.cov.transpose())).eval();
    if (innovation != nullptr) {
        innovation->nu = nu;
        innovation->s = s;
        innovation->nis = nu.dot(s_ldlt.solve(nu));
    }
    return next;
}

double pressure_at_altitude(double h, double reference_pressure)
{
    return reference_pressure * std::pow(1.0 - kIsaLapse * h, kIsaExponent);
}

double baro_altitude(double pressure, double reference_pressure)
{
    return (1.0 - std::pow(pressure / reference_pressure, 1.0 / kIsaExponent)) / kIsaLapse;
}

PositionTracker::PositionTracker(TrackerConfig config) : config_(config) {}

void PositionTracker::reset(const Vec2 &position, const Vec2 &velocity, double position_sigma)
{
    state_ = LkfState{};
    state_.chi << position.x(), velocity.x(), 0.0, position.y(), velocity.y(), 0.0;
    const double p = position_sigma * position_sigma;
    state_.cov = diagonal_noise(p, 1.0, 1.0);
    last_fix_.reset();
}

void PositionTracker::predict(double dt)
{
    state_.q = diagonal_noise(config_.q_pos, config_.q_vel, config_.q_acc) * (dt / config_.q_reference_dt);
    state_ = lkf_predict(state_, dt);
}

void PositionTracker::correct_acceleration(const Vec2 &acc_world)
{
    Vector6 z = state_.chi;
    z[AX] = acc_world.x();
    z[AY] = acc_world.y();
    const double big = config_.unobserved_variance;
    const double a2 = config_.acc_sigma * config_.acc_sigma;
    state_.r = diagonal_noise(big, big, a2);
    state_ = lkf_update(state_, z);
}

Innovation PositionTracker::correct_fix(const Vec2 &fix, double sigma, const Vec2 &acc_world, double t)
{
    Vector6 z;
    double vel_var = config_.unobserved_variance;
    Vec2 vel = velocity();
    if (last_fix_ && t > last_fix_t_) {
        const double dt = t - last_fix_t_;
        // Differenced fixes estimate mid-interval velocity; shift to the fix time.
        vel = (fix - *last_fix_) / dt + 0.5 * acc_world * dt;
        const double s = std::max(sigma, last_fix_sigma_);
        vel_var = 2.0 * s * s / (dt * dt);
    }
    z << fix.x(), vel.x(), acc_world.x(), fix.y(), vel.y(), acc_world.y();
    state_.r = diagonal_noise(sigma * sigma, vel_var, config_.acc_sigma * config_.acc_sigma);
    Innovation innov;
    state_ = lkf_update(state_, z, &innov);
    last_fix_ = fix;
    last_fix_t_ = t;
    last_fix_sigma_ = sigma;
    return innov;
}

} // namespace seasearch::estimation

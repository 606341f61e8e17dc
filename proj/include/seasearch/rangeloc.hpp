#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "seasearch/geometry.hpp"
#include "seasearch/random.hpp"

namespace seasearch::rangeloc {

struct RangeMeasurement {
    int i = 0;
    int j = 0;
    double d = 0.0;
    double t = 0.0;
};

struct RangingParams {
    double max_range = 1200.0;
    double relative_sigma = 0.01; ///< multiplicative 1-sigma error
};

/// One simultaneous ranging epoch over all pairs within max_range.
std::vector<RangeMeasurement> measure_ranges(const std::vector<Vec2> &true_positions, Rng &rng,
                                             const RangingParams &params = {}, double t = 0.0);

/// Symmetric sparse distance matrix with 0/1 (or general non-negative) weights.
class DistanceMatrix {
public:
    explicit DistanceMatrix(int n = 0) : d_(Eigen::MatrixXd::Zero(n, n)), w_(Eigen::MatrixXd::Zero(n, n)) {}

    static DistanceMatrix from_measurements(int n, const std::vector<RangeMeasurement> &measurements);
    /// Full matrix of exact distances between the given points.
    static DistanceMatrix exact(const std::vector<Vec2> &points);

    int size() const { return static_cast<int>(d_.rows()); }
    void set(int i, int j, double d, double weight = 1.0);
    void clear(int i, int j) { set(i, j, 0.0, 0.0); }
    double distance(int i, int j) const { return d_(i, j); }
    double weight(int i, int j) const { return w_(i, j); }
    bool measured(int i, int j) const { return w_(i, j) > 0.0; }
    int link_count(int i) const;

    const Eigen::MatrixXd &distances() const { return d_; }
    const Eigen::MatrixXd &weights() const { return w_; }

    /// Connected components of the measurement graph, each sorted ascending.
    std::vector<std::vector<int>> components() const;

private:
    Eigen::MatrixXd d_;
    Eigen::MatrixXd w_;
};

/// n x 2 coordinates, one agent per row.
using Coordinates = Eigen::MatrixX2d;

Coordinates to_coordinates(const std::vector<Vec2> &points);
std::vector<Vec2> to_points(const Coordinates &x);

struct Placement {
    Coordinates positions;
    double stress = 0.0;
    bool converged = false;
    int iterations = 0;
    bool disconnected = false;
    std::vector<double> stress_history; ///< stress before the first and after every iteration
};

/// Weighted raw stress over measured pairs i < j.
double stress(const Coordinates &x, const DistanceMatrix &d);

struct SmacofOptions {
    double tol = 1e-9;   ///< relative stress decrease below which iteration stops
    int max_iter = 500;
    bool record_history = false;
};

/// Majorization (Guttman transform) solve, warm-started from `init`. Each connected
/// component of the measurement graph is solved independently; isolated agents keep
/// their initial coordinates. A fully measured component of three or more agents is
/// also solved from its classical-scaling embedding and the lower-stress result kept;
/// stress_history then belongs to the kept solve.
Placement smacof_solve(const DistanceMatrix &d, const Coordinates &init, const SmacofOptions &options = {});

class InsufficientReferences : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Reference {
    int agent = 0;
    Vec2 world{0.0, 0.0};
    double weight = 1.0;
};

struct Alignment {
    Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity(); ///< orthogonal; det -1 when reflected
    Vec2 translation{0.0, 0.0};
    std::vector<Vec2> positions; ///< all agents in the world frame
    double residual_rms = 0.0;   ///< weighted RMS misfit over references
    bool reflected = false;
};

/// Least-squares rigid transform (rotation, translation, reflection when the references
/// determine it) mapping solved reference coordinates onto their world positions.
/// With two (or collinear) references the mirror ambiguity is resolved against
/// `last_known`, when given, by least total displacement.
Alignment align_global(const Coordinates &solved, const std::vector<Reference> &references,
                       const std::vector<Vec2> *last_known = nullptr);

struct TierParams {
    std::vector<double> sigma{0.0, 5.0, 15.0}; ///< uncertainty of tier 1, 2, 3
    double growth = 3.0;                        ///< factor per tier beyond the table
    int min_links = 3;
};

struct TierInfo {
    int tier = 0; ///< 0 = unlocalized (no chain of links to tier 1)
    double sigma = 0.0;
};

double tier_sigma(int tier, const TierParams &params);

/// Tier labels: tier-1 anchors are given; an agent with at least `min_links` links to
/// agents of tier <= n becomes tier n + 1.
std::vector<TierInfo> tier_assign(const DistanceMatrix &links, const std::vector<int> &tier1_anchors,
                                  const TierParams &params = {});

struct BenchResult {
    std::vector<double> rmse; ///< per-trial post-alignment RMSE
    double median_rmse = 0.0;
    int non_monotone_iterations = 0;
};

/// Monte Carlo: agents uniform in a square region, full noisy distance matrix,
/// random initialization, alignment onto truth.
BenchResult localization_bench(int agents, double region_size, int trials, std::uint64_t seed,
                               double relative_sigma = 0.01);

} // namespace seasearch::rangeloc

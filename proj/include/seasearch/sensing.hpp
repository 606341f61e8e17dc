#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "seasearch/geometry.hpp"
#include "seasearch/random.hpp"
#include "seasearch/vehicle.hpp"
#include "seasearch/vessel.hpp"

namespace seasearch::sensing {

struct CameraModel {
    double tilt = deg2rad(20.0);
    double reference_height = 100.0;
    double cross_track = 100.0; ///< at reference height
    double along_track = 250.0; ///< at reference height
    double frame_rate = 2.0;
    double position_sigma = 5.0; ///< pixel-to-ground error per axis, m
};

/// Rectangular ground footprint rotated by the UAV heading.
struct Footprint {
    Vec2 center{0.0, 0.0};
    double heading = 0.0;
    double half_cross = 0.0;
    double half_along = 0.0;

    bool empty() const { return half_cross <= 0.0 || half_along <= 0.0; }
    bool contains(const Vec2 &p) const;
    std::array<Vec2, 4> corners() const;
    double area() const { return 4.0 * half_cross * half_along; }
};

/// Ground footprint of the tilted forward camera. Dimensions scale linearly with height;
/// the centre sits h*cot(tilt) ahead, clipped to [along/2, along].
Footprint camera_footprint(const vehicle::FixedWingState &uav, const CameraModel &cam);

/// Row-stochastic classification model; column 0 is "miss", columns 1..7 are A..G.
struct ConfusionMatrix {
    std::array<std::array<double, kVesselClassCount + 1>, kVesselClassCount> rows{};

    static ConfusionMatrix identity();
    /// Diagonal 0.99 for E (1% miss), 0.95 elsewhere; C loses 2.5% each to B and D,
    /// the other non-target classes lose 5% to misses.
    static ConfusionMatrix defaults();

    double probability(int true_class, int observed) const; ///< observed -1 = miss
    void validate() const;
};

inline constexpr int kMiss = -1;

/// One categorical draw from the row of true_class; returns kMiss or a class index.
int classify_vessel(int true_class, const ConfusionMatrix &cm, Rng &rng);

struct DetectionEvent {
    double t = 0.0;
    int uav = 0;
    int vessel_id = 0;
    int observed_class = kMiss;
    Vec2 observed_position{0.0, 0.0};
};

std::vector<DetectionEvent> detect_frame(const vehicle::FixedWingState &uav, int uav_id,
                                         const std::vector<Vessel> &vessels, const CameraModel &cam,
                                         const ConfusionMatrix &cm, Rng &rng, double t = 0.0);

struct RadarModel {
    Vec2 position{1000.0, -100.0};
    double range = 3500.0;
    double scan_period = 2.0;
    double sigma = 30.0; ///< per-scan position noise and splat width, m
    double decay = 0.99;
    double land_rate = 1.0; ///< mass added per scan to each land cell
};

/// Non-negative accumulation grid over a rectangle; row-major with row 0 at y0.
class ProbabilityMap {
public:
    ProbabilityMap() = default;
    ProbabilityMap(const Rect &extent, double cell);

    const Rect &extent() const { return extent_; }
    double cell() const { return cell_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double at(int ix, int iy) const { return values_[index(ix, iy)]; }
    double &at(int ix, int iy) { return values_[index(ix, iy)]; }
    Vec2 cell_center(int ix, int iy) const;
    const std::vector<double> &values() const { return values_; }
    std::vector<double> &values() { return values_; }
    double max() const;

    void set_land_mask(std::vector<bool> mask);
    const std::vector<bool> &land_mask() const { return land_; }

    /// Adds a unit-mass Gaussian at `p`, truncated at 4 sigma.
    void splat(const Vec2 &p, double sigma, double mass = 1.0);

    /// Header lines "origin x y", "cell c", "size nx ny", then ny rows of nx values.
    void write(std::ostream &out) const;
    static ProbabilityMap read(std::istream &in);

private:
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix); }

    Rect extent_;
    double cell_ = 1.0;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> values_;
    std::vector<bool> land_;
};

/// One radar scan: decay, then a noisy splat per vessel within range, then land accumulation.
void radar_scan(const std::vector<Vessel> &vessels, const RadarModel &radar, ProbabilityMap &map, Rng &rng);

struct Cluster {
    Vec2 point{0.0, 0.0}; ///< mass-weighted centroid
    Vec2 peak{0.0, 0.0};  ///< centre of the highest member cell
    double radius = 0.0;  ///< max distance from centroid to a member cell centre
    double mass = 0.0;
    int cells = 0;
};

/// 8-connected components above threshold * max(map).
std::vector<Cluster> extract_targets(const ProbabilityMap &map, double threshold = 0.3);

} // namespace seasearch::sensing

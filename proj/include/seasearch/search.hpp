#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "seasearch/geometry.hpp"
#include "seasearch/sensing.hpp"

namespace seasearch::search {

using Waypoints = std::vector<Vec2>;

enum class Pattern { ParallelLines, CreepingLines, SquareSpiral };

std::string_view to_string(Pattern p);

/// Track axis convention: parallel-line tracks run along y and are stacked along x;
/// creeping-line legs run along x and creep along y.
enum class Axis { X, Y };

/// Track centre lines of a region on a global lattice: n = ceil(extent / spacing)
/// tracks at (j + 0.5) * extent / n, stacked along `stack`.
std::vector<double> track_lattice(const Rect &region, double spacing, Axis stack);

/// Splits `region` into n_uavs disjoint strips along `stack` whose boundaries sit
/// half-way between lattice tracks; each track belongs to the strip containing its
/// centre line. A strip with no lattice track keeps its equal-width share.
std::vector<Rect> strip_partition(const Rect &region, int n_uavs, double spacing, Axis stack);

std::vector<Waypoints> generate_parallel(const Rect &zone_half, int n_uavs, double spacing);
std::vector<Waypoints> generate_creeping(const Rect &zone_half, int n_uavs, double spacing);

/// Outside-in square spiral over the region inset by spacing/2, starting at the
/// lower-left inset corner. Clockwise means the first leg runs along +y.
Waypoints generate_square_spiral(const Rect &region, double spacing, bool clockwise = true);

/// One outside-in spiral per strip of the parallel-line partition.
std::vector<Waypoints> generate_spiral_strips(const Rect &zone_half, int n_uavs, double spacing);

std::vector<Waypoints> generate_pattern(Pattern p, const Rect &zone_half, int n_uavs, double spacing);

/// Inside-out square spiral, east first then counter-clockwise. Leg lengths are
/// a, a, a + s, a + s, a + 2s, ... with a = s + start_radius; four legs per loop.
Waypoints square_spiral_around(const Vec2 &point, double start_radius, double spacing, int n_loops = 1);

/// Sum of leg lengths.
double path_length(const Waypoints &path);

/// Fraction of cells (cell centres on a `cell` grid over `region`) lying within
/// `half_width` of some leg of some path.
double coverage_fraction(const Rect &region, const std::vector<Waypoints> &paths, double half_width, double cell = 10.0);

// ---------------------------------------------------------------------------
// MinMax multiple travelling salesman

struct MtspSolution {
    std::vector<std::vector<int>> tours; ///< indices into the input points, one list per depot
    double objective = 0.0;              ///< longest open tour, depot -> first -> ... -> last
};

/// Length of an open tour starting at `depot`.
double tour_length(const Vec2 &depot, const std::vector<Vec2> &points, const std::vector<int> &tour);

double minmax_objective(const std::vector<Vec2> &points, const std::vector<Vec2> &depots,
                        const std::vector<std::vector<int>> &tours);

inline constexpr int kExactMtspLimit = 10;

/// Exact optimum by subset dynamic programming over open paths and depot partitions.
/// Practical up to about 12 points.
MtspSolution mtsp_exact(const std::vector<Vec2> &points, const std::vector<Vec2> &depots);

struct MtspHeuristicOptions {
    int restarts = 8;
    std::uint64_t seed = 0;
};

/// Greedy insertion followed by 2-opt, relocate and swap local search on the
/// lexicographic (max, total) objective, best over seeded restarts.
MtspSolution mtsp_heuristic(const std::vector<Vec2> &points, const std::vector<Vec2> &depots,
                            const MtspHeuristicOptions &options = {});

/// Exact for at most kExactMtspLimit points, heuristic otherwise.
MtspSolution minmax_mtsp(const std::vector<Vec2> &points, const std::vector<Vec2> &depots,
                         const MtspHeuristicOptions &options = {});

// ---------------------------------------------------------------------------
// Tour plans

enum class Action { Transit, SpiralInspect };

struct PlannedWaypoint {
    Vec2 position{0.0, 0.0};
    Action action = Action::Transit;
    double radius = 0.0; ///< spiral start radius for SpiralInspect
};

struct UavPlan {
    std::vector<PlannedWaypoint> first_half;
    std::vector<PlannedWaypoint> second_half;
};

struct TourPlan {
    std::vector<UavPlan> uavs;
    bool fallback = false;           ///< no clusters: pattern sweep instead of inspection tours
    std::vector<sensing::Cluster> clusters;
    double objective[2] = {0.0, 0.0}; ///< per-half minmax tour length
};

struct InformedOptions {
    double threshold = 0.3;
    double spacing = 100.0;
    MtspHeuristicOptions mtsp;
};

/// Clusters from the map, split at the vertical mid-line of `zone`; half 0 tours
/// start from `entry` (one per UAV), half 1 tours from the projection of each
/// half-0 tour end onto the dividing line.
TourPlan plan_informed(const sensing::ProbabilityMap &map, int n_uavs, const Rect &zone,
                       const std::vector<Vec2> &entry, const InformedOptions &options = {});

/// (uav, seq, x, y, action) records; `half` column 0/1 separates the segments.
void write_plan_csv(std::ostream &out, const std::vector<Waypoints> &half0, const std::vector<Waypoints> &half1);
void write_plan_csv(std::ostream &out, const TourPlan &plan);

} // namespace seasearch::search

#include "seasearch/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "seasearch/random.hpp"

namespace seasearch::search {

namespace {

constexpr double kEps = 1e-9;

double extent_along(const Rect &r, Axis stack) { return stack == Axis::X ? r.width() : r.height(); }
double lower_along(const Rect &r, Axis stack) { return stack == Axis::X ? r.x0 : r.y0; }

Rect sub_strip(const Rect &r, Axis stack, double lo, double hi)
{
    return stack == Axis::X ? Rect{lo, r.y0, hi, r.y1} : Rect{r.x0, lo, r.x1, hi};
}

void check_args(int n_uavs, double spacing)
{
    if (n_uavs < 1) throw std::invalid_argument("pattern generator: n_uavs must be >= 1");
    if (!(spacing > 0.0)) throw std::invalid_argument("pattern generator: spacing must be > 0");
}

/// Boustrophedon over the lattice tracks inside each strip.
std::vector<Waypoints> lawnmower(const Rect &half, int n_uavs, double spacing, Axis stack)
{
    check_args(n_uavs, spacing);
    const auto strips = strip_partition(half, n_uavs, spacing, stack);
    const auto tracks = track_lattice(half, spacing, stack);
    std::vector<Waypoints> out;
    for (const Rect &strip : strips) {
        const double lo = lower_along(strip, stack);
        const double hi = lo + extent_along(strip, stack);
        std::vector<double> mine;
        for (double c : tracks)
            if (c >= lo - kEps && c < hi - kEps) mine.push_back(c);
        if (mine.empty()) mine.push_back(0.5 * (lo + hi));

        Waypoints path;
        for (std::size_t i = 0; i < mine.size(); ++i) {
            Vec2 a;
            Vec2 b;
            if (stack == Axis::X) {
                a = {mine[i], strip.y0};
                b = {mine[i], strip.y1};
            } else {
                a = {strip.x0, mine[i]};
                b = {strip.x1, mine[i]};
            }
            if (i % 2 == 1) std::swap(a, b);
            path.push_back(a);
            path.push_back(b);
        }
        out.push_back(std::move(path));
    }
    return out;
}

Vec2 transposed(const Vec2 &p) { return {p.y(), p.x()}; }

Waypoints spiral_clockwise(double l, double b, double r, double t, double s)
{
    Waypoints out{{l, b}};
    // Leg order: up, right, down, left. The first three legs run on the full inset
    // perimeter; afterwards each leg's far boundary moves in by one spacing.
    for (int leg = 0;; ++leg) {
        const int dir = leg % 4;
        if (leg >= 3) {
            switch (dir) {
            case 0: t -= s; break;
            case 1: r -= s; break;
            case 2: b += s; break;
            default: l += s; break;
            }
        }
        const Vec2 &p = out.back();
        Vec2 q = p;
        double len = 0.0;
        switch (dir) {
        case 0: q.y() = t; len = t - p.y(); break;
        case 1: q.x() = r; len = r - p.x(); break;
        case 2: q.y() = b; len = p.y() - b; break;
        default: q.x() = l; len = p.x() - l; break;
        }
        if (len <= kEps) break;
        out.push_back(q);
    }
    return out;
}

} // namespace

std::string_view to_string(Pattern p)
{
    switch (p) {
    case Pattern::ParallelLines: return "parallel";
    case Pattern::CreepingLines: return "creeping";
    case Pattern::SquareSpiral: return "spiral";
    }
    return "?";
}

std::vector<double> track_lattice(const Rect &region, double spacing, Axis stack)
{
    const double extent = extent_along(region, stack);
    const double lo = lower_along(region, stack);
    const int n = std::max(1, static_cast<int>(std::ceil(extent / spacing - kEps)));
    const double eff = extent / n;
    std::vector<double> tracks(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) tracks[static_cast<std::size_t>(j)] = lo + (j + 0.5) * eff;
    return tracks;
}

std::vector<Rect> strip_partition(const Rect &region, int n_uavs, double spacing, Axis stack)
{
    check_args(n_uavs, spacing);
    const auto tracks = track_lattice(region, spacing, stack);
    const double lo = lower_along(region, stack);
    const double extent = extent_along(region, stack);
    const double share = extent / n_uavs;

    std::vector<std::vector<double>> owned(static_cast<std::size_t>(n_uavs));
    for (double c : tracks) {
        const int k = std::clamp(static_cast<int>(std::floor((c - lo) / share)), 0, n_uavs - 1);
        owned[static_cast<std::size_t>(k)].push_back(c);
    }
    std::vector<double> bounds(static_cast<std::size_t>(n_uavs) + 1);
    bounds.front() = lo;
    bounds.back() = lo + extent;
    for (int k = 1; k < n_uavs; ++k) {
        const auto &below = owned[static_cast<std::size_t>(k - 1)];
        const auto &above = owned[static_cast<std::size_t>(k)];
        bounds[static_cast<std::size_t>(k)] =
            (below.empty() || above.empty()) ? lo + k * share : 0.5 * (below.back() + above.front());
    }
    std::vector<Rect> strips;
    for (int k = 0; k < n_uavs; ++k)
        strips.push_back(sub_strip(region, stack, bounds[static_cast<std::size_t>(k)], bounds[static_cast<std::size_t>(k) + 1]));
    return strips;
}

std::vector<Waypoints> generate_parallel(const Rect &zone_half, int n_uavs, double spacing)
{
    return lawnmower(zone_half, n_uavs, spacing, Axis::X);
}

std::vector<Waypoints> generate_creeping(const Rect &zone_half, int n_uavs, double spacing)
{
    return lawnmower(zone_half, n_uavs, spacing, Axis::Y);
}

Waypoints generate_square_spiral(const Rect &region, double spacing, bool clockwise)
{
    if (!(spacing > 0.0)) throw std::invalid_argument("generate_square_spiral: spacing must be > 0");
    if (region.width() < spacing || region.height() < spacing) return {region.center()};
    const double h = 0.5 * spacing;
    if (clockwise) return spiral_clockwise(region.x0 + h, region.y0 + h, region.x1 - h, region.y1 - h, spacing);
    // Mirroring across y = x reverses orientation.
    Waypoints out = spiral_clockwise(region.y0 + h, region.x0 + h, region.y1 - h, region.x1 - h, spacing);
    for (auto &p : out) p = transposed(p);
    return out;
}

std::vector<Waypoints> generate_spiral_strips(const Rect &zone_half, int n_uavs, double spacing)
{
    std::vector<Waypoints> out;
    for (const Rect &strip : strip_partition(zone_half, n_uavs, spacing, Axis::X))
        out.push_back(generate_square_spiral(strip, spacing, true));
    return out;
}

std::vector<Waypoints> generate_pattern(Pattern p, const Rect &zone_half, int n_uavs, double spacing)
{
    switch (p) {
    case Pattern::ParallelLines: return generate_parallel(zone_half, n_uavs, spacing);
    case Pattern::CreepingLines: return generate_creeping(zone_half, n_uavs, spacing);
    case Pattern::SquareSpiral: return generate_spiral_strips(zone_half, n_uavs, spacing);
    }
    throw std::invalid_argument("unknown pattern");
}

Waypoints square_spiral_around(const Vec2 &point, double start_radius, double spacing, int n_loops)
{
    if (!(spacing > 0.0)) throw std::invalid_argument("square_spiral_around: spacing must be > 0");
    const double a = spacing + std::max(0.0, start_radius);
    static const Vec2 dirs[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    Waypoints out{point};
    for (int leg = 0; leg < 4 * std::max(0, n_loops); ++leg) {
        const double len = a + (leg / 2) * spacing;
        out.push_back(out.back() + len * dirs[leg % 4]);
    }
    return out;
}

double path_length(const Waypoints &path)
{
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += (path[i] - path[i - 1]).norm();
    return total;
}

double coverage_fraction(const Rect &region, const std::vector<Waypoints> &paths, double half_width, double cell)
{
    const int nx = static_cast<int>(std::ceil(region.width() / cell - kEps));
    const int ny = static_cast<int>(std::ceil(region.height() / cell - kEps));
    if (nx <= 0 || ny <= 0) return 0.0;
    struct Seg {
        Vec2 a, b;
    };
    std::vector<Seg> segs;
    for (const auto &p : paths) {
        if (p.size() == 1) segs.push_back({p[0], p[0]});
        for (std::size_t i = 1; i < p.size(); ++i) segs.push_back({p[i - 1], p[i]});
    }
    long covered = 0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Vec2 c(region.x0 + (ix + 0.5) * cell, region.y0 + (iy + 0.5) * cell);
            for (const auto &s : segs) {
                if (point_segment_distance(c, s.a, s.b) <= half_width + kEps) {
                    ++covered;
                    break;
                }
            }
        }
    }
    return static_cast<double>(covered) / (static_cast<double>(nx) * ny);
}

// ---------------------------------------------------------------------------

double tour_length(const Vec2 &depot, const std::vector<Vec2> &points, const std::vector<int> &tour)
{
    double len = 0.0;
    Vec2 prev = depot;
    for (int i : tour) {
        len += (points[static_cast<std::size_t>(i)] - prev).norm();
        prev = points[static_cast<std::size_t>(i)];
    }
    return len;
}

double minmax_objective(const std::vector<Vec2> &points, const std::vector<Vec2> &depots,
                        const std::vector<std::vector<int>> &tours)
{
    double worst = 0.0;
    for (std::size_t t = 0; t < tours.size(); ++t) worst = std::max(worst, tour_length(depots[t], points, tours[t]));
    return worst;
}

MtspSolution mtsp_exact(const std::vector<Vec2> &points, const std::vector<Vec2> &depots)
{
    const int n = static_cast<int>(points.size());
    const int k = static_cast<int>(depots.size());
    if (k < 1) throw std::invalid_argument("mtsp: need at least one depot");
    if (n > 16) throw std::invalid_argument("mtsp_exact: too many points");
    MtspSolution sol;
    sol.tours.assign(static_cast<std::size_t>(k), {});
    if (n == 0) return sol;

    const std::size_t full = (std::size_t{1} << n);
    const double inf = std::numeric_limits<double>::infinity();
    auto dist = [&](int i, int j) { return (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]).norm(); };

    // best open path per depot and subset, with the predecessor table for reconstruction
    std::vector<std::vector<double>> path_cost(static_cast<std::size_t>(k), std::vector<double>(full, inf));
    std::vector<std::vector<int>> path_last(static_cast<std::size_t>(k), std::vector<int>(full, -1));
    std::vector<std::vector<std::vector<int>>> parent(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
        std::vector<double> g(full * static_cast<std::size_t>(n), inf);
        auto &par = parent[static_cast<std::size_t>(t)];
        par.assign(full, std::vector<int>(static_cast<std::size_t>(n), -1));
        for (int j = 0; j < n; ++j)
            g[(std::size_t{1} << j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                (points[static_cast<std::size_t>(j)] - depots[static_cast<std::size_t>(t)]).norm();
        for (std::size_t s = 1; s < full; ++s) {
            for (int j = 0; j < n; ++j) {
                if (!(s & (std::size_t{1} << j))) continue;
                const double gj = g[s * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
                if (gj == inf) continue;
                for (int m = 0; m < n; ++m) {
                    if (s & (std::size_t{1} << m)) continue;
                    const std::size_t s2 = s | (std::size_t{1} << m);
                    const double c = gj + dist(j, m);
                    double &slot = g[s2 * static_cast<std::size_t>(n) + static_cast<std::size_t>(m)];
                    if (c < slot) {
                        slot = c;
                        par[s2][static_cast<std::size_t>(m)] = j;
                    }
                }
            }
        }
        auto &pc = path_cost[static_cast<std::size_t>(t)];
        auto &pl = path_last[static_cast<std::size_t>(t)];
        pc[0] = 0.0;
        for (std::size_t s = 1; s < full; ++s)
            for (int j = 0; j < n; ++j) {
                const double c = g[s * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
                if (c < pc[s]) {
                    pc[s] = c;
                    pl[s] = j;
                }
            }
    }

    // partition DP: best[t][S] = min over T subset of S of max(best[t-1][S \ T], path_cost[t][T])
    std::vector<std::vector<double>> best(static_cast<std::size_t>(k), std::vector<double>(full, inf));
    std::vector<std::vector<std::size_t>> choice(static_cast<std::size_t>(k), std::vector<std::size_t>(full, 0));
    for (std::size_t s = 0; s < full; ++s) {
        best[0][s] = path_cost[0][s];
        choice[0][s] = s;
    }
    for (int t = 1; t < k; ++t) {
        const auto &prev = best[static_cast<std::size_t>(t - 1)];
        const auto &pc = path_cost[static_cast<std::size_t>(t)];
        auto &cur = best[static_cast<std::size_t>(t)];
        auto &ch = choice[static_cast<std::size_t>(t)];
        for (std::size_t s = 0; s < full; ++s) {
            for (std::size_t sub = s;; sub = (sub - 1) & s) {
                const double c = std::max(prev[s & ~sub], pc[sub]);
                if (c < cur[s]) {
                    cur[s] = c;
                    ch[s] = sub;
                }
                if (sub == 0) break;
            }
        }
    }

    std::size_t remaining = full - 1;
    for (int t = k - 1; t >= 0; --t) {
        std::size_t sub = choice[static_cast<std::size_t>(t)][remaining];
        remaining &= ~sub;
        std::vector<int> tour;
        int j = path_last[static_cast<std::size_t>(t)][sub];
        std::size_t s = sub;
        while (j >= 0 && s) {
            tour.push_back(j);
            const int pj = parent[static_cast<std::size_t>(t)][s][static_cast<std::size_t>(j)];
            s &= ~(std::size_t{1} << j);
            j = pj;
        }
        std::reverse(tour.begin(), tour.end());
        sol.tours[static_cast<std::size_t>(t)] = std::move(tour);
    }
    sol.objective = minmax_objective(points, depots, sol.tours);
    return sol;
}

namespace {

struct Score {
    double max = 0.0;
    double sum = 0.0;
};

bool better(const Score &a, const Score &b)
{
    if (a.max < b.max - kEps) return true;
    if (a.max > b.max + kEps) return false;
    return a.sum < b.sum - kEps;
}

class LocalSearch {
public:
    LocalSearch(const std::vector<Vec2> &pts, const std::vector<Vec2> &depots) : pts_(pts), depots_(depots) {}

    double length(std::size_t t, const std::vector<int> &tour) const { return tour_length(depots_[t], pts_, tour); }

    Score score(const std::vector<double> &lens) const
    {
        Score s;
        for (double l : lens) {
            s.max = std::max(s.max, l);
            s.sum += l;
        }
        return s;
    }

    std::vector<std::vector<int>> greedy(const std::vector<int> &order) const
    {
        std::vector<std::vector<int>> tours(depots_.size());
        std::vector<double> lens(depots_.size(), 0.0);
        for (int p : order) {
            Score best_score{std::numeric_limits<double>::infinity(), 0.0};
            std::size_t best_t = 0;
            std::size_t best_pos = 0;
            for (std::size_t t = 0; t < tours.size(); ++t) {
                for (std::size_t pos = 0; pos <= tours[t].size(); ++pos) {
                    auto trial = tours[t];
                    trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), p);
                    auto l2 = lens;
                    l2[t] = length(t, trial);
                    const Score s = score(l2);
                    if (better(s, best_score)) {
                        best_score = s;
                        best_t = t;
                        best_pos = pos;
                    }
                }
            }
            tours[best_t].insert(tours[best_t].begin() + static_cast<std::ptrdiff_t>(best_pos), p);
            lens[best_t] = length(best_t, tours[best_t]);
        }
        return tours;
    }

    void improve(std::vector<std::vector<int>> &tours) const
    {
        std::vector<double> lens(tours.size());
        for (std::size_t t = 0; t < tours.size(); ++t) lens[t] = length(t, tours[t]);
        bool improved = true;
        while (improved) {
            improved = false;
            improved |= two_opt(tours, lens);
            improved |= relocate(tours, lens);
            improved |= swap(tours, lens);
        }
    }

private:
    bool two_opt(std::vector<std::vector<int>> &tours, std::vector<double> &lens) const
    {
        bool any = false;
        for (std::size_t t = 0; t < tours.size(); ++t) {
            bool again = true;
            while (again) {
                again = false;
                auto &tour = tours[t];
                for (std::size_t i = 0; i + 1 < tour.size() && !again; ++i)
                    for (std::size_t j = i + 1; j < tour.size() && !again; ++j) {
                        auto trial = tour;
                        std::reverse(trial.begin() + static_cast<std::ptrdiff_t>(i), trial.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                        const double l = length(t, trial);
                        if (l < lens[t] - kEps) {
                            tour = std::move(trial);
                            lens[t] = l;
                            again = any = true;
                        }
                    }
            }
        }
        return any;
    }

    bool relocate(std::vector<std::vector<int>> &tours, std::vector<double> &lens) const
    {
        const Score base = score(lens);
        for (std::size_t a = 0; a < tours.size(); ++a)
            for (std::size_t i = 0; i < tours[a].size(); ++i)
                for (std::size_t b = 0; b < tours.size(); ++b) {
                    auto src = tours[a];
                    const int p = src[i];
                    src.erase(src.begin() + static_cast<std::ptrdiff_t>(i));
                    const std::size_t slots = (a == b ? src.size() : tours[b].size()) + 1;
                    for (std::size_t pos = 0; pos < slots; ++pos) {
                        if (a == b && pos == i) continue;
                        auto dst = (a == b) ? src : tours[b];
                        dst.insert(dst.begin() + static_cast<std::ptrdiff_t>(pos), p);
                        auto l2 = lens;
                        if (a == b) {
                            l2[a] = length(a, dst);
                        } else {
                            l2[a] = length(a, src);
                            l2[b] = length(b, dst);
                        }
                        if (better(score(l2), base)) {
                            if (a == b) {
                                tours[a] = std::move(dst);
                            } else {
                                tours[a] = src;
                                tours[b] = std::move(dst);
                            }
                            lens = l2;
                            return true;
                        }
                    }
                }
        return false;
    }

    bool swap(std::vector<std::vector<int>> &tours, std::vector<double> &lens) const
    {
        const Score base = score(lens);
        for (std::size_t a = 0; a < tours.size(); ++a)
            for (std::size_t b = a + 1; b < tours.size(); ++b)
                for (std::size_t i = 0; i < tours[a].size(); ++i)
                    for (std::size_t j = 0; j < tours[b].size(); ++j) {
                        auto ta = tours[a];
                        auto tb = tours[b];
                        std::swap(ta[i], tb[j]);
                        auto l2 = lens;
                        l2[a] = length(a, ta);
                        l2[b] = length(b, tb);
                        if (better(score(l2), base)) {
                            tours[a] = std::move(ta);
                            tours[b] = std::move(tb);
                            lens = l2;
                            return true;
                        }
                    }
        return false;
    }

    const std::vector<Vec2> &pts_;
    const std::vector<Vec2> &depots_;
};

} // namespace

MtspSolution mtsp_heuristic(const std::vector<Vec2> &points, const std::vector<Vec2> &depots,
                            const MtspHeuristicOptions &options)
{
    if (depots.empty()) throw std::invalid_argument("mtsp: need at least one depot");
    const std::size_t n = points.size();

    // Work on a canonical (sorted) copy so the result does not depend on input order.
    std::vector<int> canon(n);
    std::iota(canon.begin(), canon.end(), 0);
    std::stable_sort(canon.begin(), canon.end(), [&](int a, int b) {
        const Vec2 &pa = points[static_cast<std::size_t>(a)];
        const Vec2 &pb = points[static_cast<std::size_t>(b)];
        return pa.x() != pb.x() ? pa.x() < pb.x() : pa.y() < pb.y();
    });
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = points[static_cast<std::size_t>(canon[i])];

    LocalSearch ls(pts, depots);
    auto nearest_depot = [&](int i) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto &dep : depots) d = std::min(d, (pts[static_cast<std::size_t>(i)] - dep).norm());
        return d;
    };

    std::vector<std::vector<int>> best;
    Score best_score{std::numeric_limits<double>::infinity(), 0.0};
    const int restarts = std::max(1, options.restarts);
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        if (r == 0) {
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return nearest_depot(a) > nearest_depot(b); });
        } else {
            Rng rng(RngStreams::derive_seed(options.seed, "mtsp-restart-" + std::to_string(r)));
            std::shuffle(order.begin(), order.end(), rng);
        }
        auto tours = ls.greedy(order);
        ls.improve(tours);
        std::vector<double> lens(tours.size());
        for (std::size_t t = 0; t < tours.size(); ++t) lens[t] = ls.length(t, tours[t]);
        const Score s = ls.score(lens);
        if (better(s, best_score)) {
            best_score = s;
            best = std::move(tours);
        }
    }

    MtspSolution sol;
    sol.tours.resize(depots.size());
    for (std::size_t t = 0; t < best.size(); ++t)
        for (int i : best[t]) sol.tours[t].push_back(canon[static_cast<std::size_t>(i)]);
    sol.objective = minmax_objective(points, depots, sol.tours);
    return sol;
}

MtspSolution minmax_mtsp(const std::vector<Vec2> &points, const std::vector<Vec2> &depots,
                         const MtspHeuristicOptions &options)
{
    if (static_cast<int>(points.size()) <= kExactMtspLimit) return mtsp_exact(points, depots);
    return mtsp_heuristic(points, depots, options);
}

// ---------------------------------------------------------------------------

TourPlan plan_informed(const sensing::ProbabilityMap &map, int n_uavs, const Rect &zone,
                       const std::vector<Vec2> &entry, const InformedOptions &options)
{
    if (n_uavs < 1) throw std::invalid_argument("plan_informed: n_uavs must be >= 1");
    if (static_cast<int>(entry.size()) != n_uavs) throw std::invalid_argument("plan_informed: one entry point per UAV");
    TourPlan plan;
    plan.uavs.resize(static_cast<std::size_t>(n_uavs));
    plan.clusters = sensing::extract_targets(map, options.threshold);

    if (plan.clusters.empty()) {
        plan.fallback = true;
        const auto h0 = generate_parallel(zone.half(0), n_uavs, options.spacing);
        const auto h1 = generate_parallel(zone.half(1), n_uavs, options.spacing);
        for (std::size_t u = 0; u < plan.uavs.size(); ++u) {
            for (const auto &p : h0[u]) plan.uavs[u].first_half.push_back({p, Action::Transit, 0.0});
            for (const auto &p : h1[u]) plan.uavs[u].second_half.push_back({p, Action::Transit, 0.0});
        }
        return plan;
    }

    const double mid = zone.center().x();
    std::vector<Vec2> pts[2];
    std::vector<int> ids[2];
    for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
        const int h = plan.clusters[c].point.x() <= mid ? 0 : 1;
        pts[h].push_back(plan.clusters[c].point);
        ids[h].push_back(static_cast<int>(c));
    }

    auto emit = [&](int h, const MtspSolution &sol) {
        for (std::size_t u = 0; u < sol.tours.size(); ++u) {
            auto &seg = h == 0 ? plan.uavs[u].first_half : plan.uavs[u].second_half;
            for (int i : sol.tours[u]) {
                const auto &cl = plan.clusters[static_cast<std::size_t>(ids[h][static_cast<std::size_t>(i)])];
                seg.push_back({cl.point, Action::SpiralInspect, cl.radius});
            }
        }
    };

    const MtspSolution first = minmax_mtsp(pts[0], entry, options.mtsp);
    plan.objective[0] = first.objective;
    emit(0, first);

    std::vector<Vec2> crossing;
    for (std::size_t u = 0; u < first.tours.size(); ++u) {
        const Vec2 end = first.tours[u].empty() ? entry[u] : pts[0][static_cast<std::size_t>(first.tours[u].back())];
        crossing.emplace_back(mid, std::clamp(end.y(), zone.y0, zone.y1));
    }
    const MtspSolution second = minmax_mtsp(pts[1], crossing, options.mtsp);
    plan.objective[1] = second.objective;
    emit(1, second);
    return plan;
}

void write_plan_csv(std::ostream &out, const std::vector<Waypoints> &half0, const std::vector<Waypoints> &half1)
{
    out.precision(17);
    out << "uav,half,seq,x,y,action,radius\n";
    const std::vector<Waypoints> *halves[2] = {&half0, &half1};
    for (int h = 0; h < 2; ++h)
        for (std::size_t u = 0; u < halves[h]->size(); ++u) {
            const auto &path = (*halves[h])[u];
            for (std::size_t s = 0; s < path.size(); ++s)
                out << u << ',' << h << ',' << s << ',' << path[s].x() << ',' << path[s].y() << ",transit,0\n";
        }
}

void write_plan_csv(std::ostream &out, const TourPlan &plan)
{
    out.precision(17);
    out << "uav,half,seq,x,y,action,radius\n";
    for (std::size_t u = 0; u < plan.uavs.size(); ++u) {
        const std::vector<PlannedWaypoint> *segs[2] = {&plan.uavs[u].first_half, &plan.uavs[u].second_half};
        for (int h = 0; h < 2; ++h)
            for (std::size_t s = 0; s < segs[h]->size(); ++s) {
                const auto &w = (*segs[h])[s];
                out << u << ',' << h << ',' << s << ',' << w.position.x() << ',' << w.position.y() << ','
                    << (w.action == Action::Transit ? "transit" : "spiral") << ',' << w.radius << '\n';
            }
    }
}

} // namespace seasearch::search

#include "seasearch/rangeloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace seasearch::rangeloc {

std::vector<RangeMeasurement> measure_ranges(const std::vector<Vec2> &true_positions, Rng &rng,
                                             const RangingParams &params, double t)
{
    std::vector<RangeMeasurement> out;
    std::normal_distribution<double> noise(0.0, 1.0);
    const int n = static_cast<int>(true_positions.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double truth = (true_positions[static_cast<std::size_t>(i)] - true_positions[static_cast<std::size_t>(j)]).norm();
            if (truth > params.max_range || truth <= 0.0) continue;
            const double eps = params.relative_sigma > 0.0 ? params.relative_sigma * noise(rng) : 0.0;
            out.push_back({i, j, std::max(truth * (1.0 + eps), 1e-3), t});
        }
    }
    return out;
}

DistanceMatrix DistanceMatrix::from_measurements(int n, const std::vector<RangeMeasurement> &measurements)
{
    DistanceMatrix m(n);
    for (const auto &r : measurements) m.set(r.i, r.j, r.d, 1.0);
    return m;
}

DistanceMatrix DistanceMatrix::exact(const std::vector<Vec2> &points)
{
    const int n = static_cast<int>(points.size());
    DistanceMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            m.set(i, j, (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]).norm(), 1.0);
    return m;
}

void DistanceMatrix::set(int i, int j, double d, double weight)
{
    if (i == j) return;
    d_(i, j) = d_(j, i) = d;
    w_(i, j) = w_(j, i) = weight;
}

int DistanceMatrix::link_count(int i) const
{
    int c = 0;
    for (int j = 0; j < size(); ++j) c += (j != i && w_(i, j) > 0.0) ? 1 : 0;
    return c;
}

std::vector<std::vector<int>> DistanceMatrix::components() const
{
    const int n = size();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (label[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> comp{s};
        label[static_cast<std::size_t>(s)] = static_cast<int>(comps.size());
        for (std::size_t k = 0; k < comp.size(); ++k) {
            const int u = comp[k];
            for (int v = 0; v < n; ++v) {
                if (label[static_cast<std::size_t>(v)] < 0 && w_(u, v) > 0.0) {
                    label[static_cast<std::size_t>(v)] = label[static_cast<std::size_t>(s)];
                    comp.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Coordinates to_coordinates(const std::vector<Vec2> &points)
{
    Coordinates x(static_cast<Eigen::Index>(points.size()), 2);
    for (std::size_t i = 0; i < points.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    return x;
}

std::vector<Vec2> to_points(const Coordinates &x)
{
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) out.emplace_back(x(i, 0), x(i, 1));
    return out;
}

double stress(const Coordinates &x, const DistanceMatrix &d)
{
    double s = 0.0;
    const int n = d.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double w = d.weight(i, j);
            if (w <= 0.0) continue;
            const double r = d.distance(i, j) - (x.row(i) - x.row(j)).norm();
            s += w * r * r;
        }
    }
    return s;
}

namespace {

/// Solves one connected component in place. Returns (iterations, converged).
std::pair<int, bool> smacof_component(const DistanceMatrix &d, const std::vector<int> &idx, Coordinates &x,
                                      const SmacofOptions &options, std::vector<double> *history)
{
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd w(m, m);
    Eigen::MatrixXd delta(m, m);
    Coordinates z(m, 2);
    for (Eigen::Index a = 0; a < m; ++a) {
        z.row(a) = x.row(idx[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = 0; b < m; ++b) {
            w(a, b) = a == b ? 0.0 : d.weight(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
            delta(a, b) = d.distance(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
        }
    }

    // V = sum_{i<j} w_ij (e_i - e_j)(e_i - e_j)^T; its Moore-Penrose inverse on a
    // connected graph is (V + 11^T/m)^-1 - 11^T/m.
    Eigen::MatrixXd v = -w;
    for (Eigen::Index a = 0; a < m; ++a) v(a, a) = w.row(a).sum();
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(m));
    const Eigen::MatrixXd v_pinv = (v + ones).ldlt().solve(Eigen::MatrixXd::Identity(m, m)) - ones;

    auto component_stress = [&](const Coordinates &c) {
        double s = 0.0;
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = a + 1; b < m; ++b) {
                if (w(a, b) <= 0.0) continue;
                const double r = delta(a, b) - (c.row(a) - c.row(b)).norm();
                s += w(a, b) * r * r;
            }
        return s;
    };
    double scale = 0.0;
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = a + 1; b < m; ++b) scale += w(a, b) * delta(a, b) * delta(a, b);

    double current = component_stress(z);
    if (history != nullptr) history->push_back(current);
    int iter = 0;
    // Exact fits stop at the rounding floor of the squared residuals.
    const double floor = 1e-28 * scale;
    bool converged = current <= floor;
    Eigen::MatrixXd b(m, m);
    while (!converged && iter < options.max_iter) {
        b.setZero();
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index c = a + 1; c < m; ++c) {
                if (w(a, c) <= 0.0) continue;
                const double dist = (z.row(a) - z.row(c)).norm();
                const double val = dist > 1e-12 ? -w(a, c) * delta(a, c) / dist : 0.0;
                b(a, c) = b(c, a) = val;
            }
        }
        for (Eigen::Index a = 0; a < m; ++a) b(a, a) = -b.row(a).sum();
        z = v_pinv * (b * z);
        ++iter;
        const double next = component_stress(z);
        if (history != nullptr) history->push_back(next);
        converged = next <= floor || (current - next) < options.tol * current;
        current = next;
    }

    for (Eigen::Index a = 0; a < m; ++a) x.row(idx[static_cast<std::size_t>(a)]) = z.row(a);
    return {iter, converged};
}

bool fully_measured(const DistanceMatrix &d, const std::vector<int> &idx)
{
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (!d.measured(idx[a], idx[b])) return false;
    return true;
}

/// Classical scaling of a complete distance matrix: top two eigenvectors of the
/// double-centred squared distances.
void torgerson_embedding(const DistanceMatrix &d, const std::vector<int> &idx, Coordinates &x)
{
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd sq(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            const double v = d.distance(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
            sq(a, b) = v * v;
        }
    const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(m));
    const Eigen::MatrixXd gram = -0.5 * j * sq * j;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    for (int k = 0; k < 2; ++k) {
        const Eigen::Index col = m - 1 - k; // eigenvalues ascend
        const double scale = std::sqrt(std::max(0.0, eig.eigenvalues()[col]));
        for (Eigen::Index a = 0; a < m; ++a) x(idx[static_cast<std::size_t>(a)], k) = scale * eig.eigenvectors()(a, col);
    }
}

double subset_stress(const DistanceMatrix &d, const std::vector<int> &idx, const Coordinates &x)
{
    double s = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const int i = idx[a], j = idx[b];
            if (!d.measured(i, j)) continue;
            const double r = d.distance(i, j) - (x.row(i) - x.row(j)).norm();
            s += d.weight(i, j) * r * r;
        }
    return s;
}

} // namespace

Placement smacof_solve(const DistanceMatrix &d, const Coordinates &init, const SmacofOptions &options)
{
    if (init.rows() != d.size()) throw std::invalid_argument("smacof_solve: init size does not match matrix");
    if (!init.allFinite()) throw std::invalid_argument("smacof_solve: init must be finite");
    Placement out;
    out.positions = init;
    out.converged = true;
    const auto comps = d.components();
    int solved = 0;
    for (const auto &comp : comps) {
        if (comp.size() < 2) continue;
        ++solved;
        std::vector<double> history;
        Coordinates warm = out.positions;
        auto [iters, ok] = smacof_component(d, comp, warm, options, options.record_history ? &history : nullptr);
        if (comp.size() >= 3 && fully_measured(d, comp)) {
            // A second start from classical scaling escapes the local minima a poor warm start can fall into.
            std::vector<double> alt_history;
            Coordinates alt = out.positions;
            torgerson_embedding(d, comp, alt);
            const auto [alt_iters, alt_ok] =
                smacof_component(d, comp, alt, options, options.record_history ? &alt_history : nullptr);
            if (subset_stress(d, comp, alt) < subset_stress(d, comp, warm)) {
                warm = alt;
                history = std::move(alt_history);
                iters = alt_iters;
                ok = alt_ok;
            }
        }
        out.positions = warm;
        out.stress_history.insert(out.stress_history.end(), history.begin(), history.end());
        out.iterations = std::max(out.iterations, iters);
        out.converged = out.converged && ok;
    }
    if (solved == 0) throw std::invalid_argument("smacof_solve: no measured pairs");
    out.disconnected = solved > 1 || std::any_of(comps.begin(), comps.end(), [](const auto &c) { return c.size() == 1; });
    out.stress = stress(out.positions, d);
    return out;
}

namespace {

struct Fit {
    Eigen::Matrix2d rotation;
    Vec2 translation;
    double sse = 0.0;
};

Fit fit_with(const Eigen::Matrix2d &rot, const Vec2 &src_c, const Vec2 &dst_c, const Coordinates &solved,
             const std::vector<Reference> &refs)
{
    Fit f{rot, dst_c - rot * src_c, 0.0};
    for (const auto &r : refs) {
        const Vec2 p = rot * solved.row(r.agent).transpose() + f.translation;
        f.sse += r.weight * (p - r.world).squaredNorm();
    }
    return f;
}

} // namespace

Alignment align_global(const Coordinates &solved, const std::vector<Reference> &references,
                       const std::vector<Vec2> *last_known)
{
    if (references.size() < 2) throw InsufficientReferences("align_global: need at least two references");
    double wsum = 0.0;
    Vec2 src_c = Vec2::Zero();
    Vec2 dst_c = Vec2::Zero();
    for (const auto &r : references) {
        wsum += r.weight;
        src_c += r.weight * solved.row(r.agent).transpose();
        dst_c += r.weight * r.world;
    }
    if (wsum <= 0.0) throw InsufficientReferences("align_global: reference weights sum to zero");
    src_c /= wsum;
    dst_c /= wsum;

    Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
    for (const auto &r : references) {
        const Vec2 a = solved.row(r.agent).transpose() - src_c;
        const Vec2 b = r.world - dst_c;
        h += r.weight * a * b.transpose();
    }
    const Eigen::JacobiSVD<Eigen::Matrix2d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix2d u = svd.matrixU();
    const Eigen::Matrix2d v = svd.matrixV();
    Eigen::Matrix2d flip = Eigen::Matrix2d::Identity();
    flip(1, 1) = -1.0;
    const Eigen::Matrix2d r_a = v * u.transpose();
    const Eigen::Matrix2d r_b = v * flip * u.transpose();
    const Eigen::Matrix2d proper = r_a.determinant() > 0.0 ? r_a : r_b;
    const Eigen::Matrix2d mirror = r_a.determinant() > 0.0 ? r_b : r_a;

    const auto sv = svd.singularValues();
    const bool ambiguous = sv(0) <= 0.0 || sv(1) <= 1e-9 * sv(0);

    Fit fit_p = fit_with(proper, src_c, dst_c, solved, references);
    Fit fit_m = fit_with(mirror, src_c, dst_c, solved, references);
    const Fit *chosen = fit_m.sse < fit_p.sse ? &fit_m : &fit_p;
    if (ambiguous) {
        chosen = &fit_p;
        if (last_known != nullptr && last_known->size() == static_cast<std::size_t>(solved.rows())) {
            auto displacement = [&](const Fit &f) {
                double s = 0.0;
                for (Eigen::Index i = 0; i < solved.rows(); ++i)
                    s += (f.rotation * solved.row(i).transpose() + f.translation - (*last_known)[static_cast<std::size_t>(i)])
                             .squaredNorm();
                return s;
            };
            if (displacement(fit_m) < displacement(fit_p)) chosen = &fit_m;
        }
    }

    Alignment out;
    out.rotation = chosen->rotation;
    out.translation = chosen->translation;
    out.reflected = chosen->rotation.determinant() < 0.0;
    out.residual_rms = std::sqrt(chosen->sse / wsum);
    out.positions.reserve(static_cast<std::size_t>(solved.rows()));
    for (Eigen::Index i = 0; i < solved.rows(); ++i)
        out.positions.push_back(out.rotation * solved.row(i).transpose() + out.translation);
    return out;
}

double tier_sigma(int tier, const TierParams &params)
{
    if (tier <= 0) return std::numeric_limits<double>::infinity();
    const auto n = static_cast<int>(params.sigma.size());
    if (tier <= n) return params.sigma[static_cast<std::size_t>(tier - 1)];
    return params.sigma.back() * std::pow(params.growth, tier - n);
}

std::vector<TierInfo> tier_assign(const DistanceMatrix &links, const std::vector<int> &tier1_anchors,
                                  const TierParams &params)
{
    const int n = links.size();
    std::vector<TierInfo> out(static_cast<std::size_t>(n));
    for (int a : tier1_anchors) out.at(static_cast<std::size_t>(a)) = {1, tier_sigma(1, params)};
    for (int level = 1; level <= n; ++level) {
        std::vector<int> promoted;
        for (int i = 0; i < n; ++i) {
            if (out[static_cast<std::size_t>(i)].tier != 0) continue;
            int count = 0;
            for (int j = 0; j < n; ++j) {
                const int tj = out[static_cast<std::size_t>(j)].tier;
                if (j != i && tj != 0 && tj <= level && links.measured(i, j)) ++count;
            }
            if (count >= params.min_links) promoted.push_back(i);
        }
        if (promoted.empty()) break; // no tier level+1 agents, so no higher tier can form
        for (int i : promoted) out[static_cast<std::size_t>(i)] = {level + 1, tier_sigma(level + 1, params)};
    }
    return out;
}

BenchResult localization_bench(int agents, double region_size, int trials, std::uint64_t seed, double relative_sigma)
{
    BenchResult result;
    Rng rng(seed);
    std::uniform_real_distribution<double> coord(0.0, region_size);
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<Vec2> truth;
        for (int i = 0; i < agents; ++i) truth.emplace_back(coord(rng), coord(rng));
        RangingParams rp;
        rp.relative_sigma = relative_sigma;
        rp.max_range = 1e12;
        const auto meas = measure_ranges(truth, rng, rp);
        const auto d = DistanceMatrix::from_measurements(agents, meas);
        Coordinates init(agents, 2);
        for (int i = 0; i < agents; ++i) init.row(i) << coord(rng), coord(rng);
        SmacofOptions opt;
        opt.record_history = true;
        const Placement p = smacof_solve(d, init, opt);
        for (std::size_t k = 1; k < p.stress_history.size(); ++k)
            if (p.stress_history[k] > p.stress_history[k - 1] + 1e-12 * std::max(1.0, p.stress_history[k - 1]))
                ++result.non_monotone_iterations;
        std::vector<Reference> refs;
        for (int i = 0; i < agents; ++i) refs.push_back({i, truth[static_cast<std::size_t>(i)], 1.0});
        const Alignment al = align_global(p.positions, refs);
        double sse = 0.0;
        for (int i = 0; i < agents; ++i)
            sse += (al.positions[static_cast<std::size_t>(i)] - truth[static_cast<std::size_t>(i)]).squaredNorm();
        result.rmse.push_back(std::sqrt(sse / agents));
    }
    std::vector<double> sorted = result.rmse;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty()) {
        const std::size_t mid = sorted.size() / 2;
        result.median_rmse = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
    return result;
}

} // namespace seasearch::rangeloc

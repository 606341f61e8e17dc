#include "seasearch/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace seasearch::sensing {

bool Footprint::contains(const Vec2 &p) const
{
    if (empty()) return false;
    const Vec2 d = p - center;
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    const double along = c * d.x() + s * d.y();
    const double cross = -s * d.x() + c * d.y();
    return std::abs(along) <= half_along && std::abs(cross) <= half_cross;
}

std::array<Vec2, 4> Footprint::corners() const
{
    const Vec2 fwd(std::cos(heading), std::sin(heading));
    const Vec2 left(-fwd.y(), fwd.x());
    return {center + half_along * fwd + half_cross * left, center - half_along * fwd + half_cross * left,
            center - half_along * fwd - half_cross * left, center + half_along * fwd - half_cross * left};
}

Footprint camera_footprint(const vehicle::FixedWingState &uav, const CameraModel &cam)
{
    Footprint f;
    f.heading = uav.psi;
    if (uav.h <= 0.0) {
        f.center = uav.position();
        return f;
    }
    const double scale = uav.h / cam.reference_height;
    f.half_cross = 0.5 * cam.cross_track * scale;
    f.half_along = 0.5 * cam.along_track * scale;
    const double along = cam.along_track * scale;
    const double offset = std::clamp(uav.h / std::tan(cam.tilt), 0.5 * along, along);
    f.center = uav.position() + offset * Vec2(std::cos(uav.psi), std::sin(uav.psi));
    return f;
}

ConfusionMatrix ConfusionMatrix::identity()
{
    ConfusionMatrix cm;
    for (int c = 0; c < kVesselClassCount; ++c) cm.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(c + 1)] = 1.0;
    return cm;
}

ConfusionMatrix ConfusionMatrix::defaults()
{
    ConfusionMatrix cm;
    for (int c = 0; c < kVesselClassCount; ++c) {
        auto &row = cm.rows[static_cast<std::size_t>(c)];
        row[static_cast<std::size_t>(c + 1)] = 0.95;
        row[0] = 0.05;
    }
    cm.rows[kClassE][kClassE + 1] = 0.99;
    cm.rows[kClassE][0] = 0.01;
    auto &c_row = cm.rows[2];
    c_row[0] = 0.0;
    c_row[1 + 1] = 0.025; // B
    c_row[3 + 1] = 0.025; // D
    return cm;
}

double ConfusionMatrix::probability(int true_class, int observed) const
{
    return rows.at(static_cast<std::size_t>(true_class)).at(static_cast<std::size_t>(observed + 1));
}

void ConfusionMatrix::validate() const
{
    for (const auto &row : rows) {
        double sum = 0.0;
        for (double p : row) {
            if (p < 0.0) throw std::invalid_argument("confusion matrix: negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("confusion matrix: row does not sum to 1");
    }
}

int classify_vessel(int true_class, const ConfusionMatrix &cm, Rng &rng)
{
    const auto &row = cm.rows.at(static_cast<std::size_t>(true_class));
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    int last_nonzero = kMiss;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] <= 0.0) continue;
        acc += row[k];
        last_nonzero = static_cast<int>(k) - 1;
        if (u < acc) return last_nonzero;
    }
    return last_nonzero; // rounding slack at the top of the row
}

std::vector<DetectionEvent> detect_frame(const vehicle::FixedWingState &uav, int uav_id,
                                         const std::vector<Vessel> &vessels, const CameraModel &cam,
                                         const ConfusionMatrix &cm, Rng &rng, double t)
{
    std::vector<DetectionEvent> out;
    const Footprint fp = camera_footprint(uav, cam);
    if (fp.empty()) return out;
    std::normal_distribution<double> noise(0.0, cam.position_sigma);
    for (const auto &v : vessels) {
        if (!fp.contains(v.position)) continue;
        DetectionEvent e;
        e.t = t;
        e.uav = uav_id;
        e.vessel_id = v.id;
        e.observed_class = classify_vessel(v.vessel_class, cm, rng);
        e.observed_position = v.position + Vec2(noise(rng), noise(rng));
        out.push_back(e);
    }
    return out;
}

ProbabilityMap::ProbabilityMap(const Rect &extent, double cell) : extent_(extent), cell_(cell)
{
    if (cell <= 0.0 || extent.width() <= 0.0 || extent.height() <= 0.0)
        throw std::invalid_argument("ProbabilityMap: extent and cell must be positive");
    nx_ = static_cast<int>(std::ceil(extent.width() / cell - 1e-9));
    ny_ = static_cast<int>(std::ceil(extent.height() / cell - 1e-9));
    values_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), 0.0);
}

Vec2 ProbabilityMap::cell_center(int ix, int iy) const
{
    return {extent_.x0 + (ix + 0.5) * cell_, extent_.y0 + (iy + 0.5) * cell_};
}

double ProbabilityMap::max() const
{
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

void ProbabilityMap::set_land_mask(std::vector<bool> mask)
{
    if (!mask.empty() && mask.size() != values_.size()) throw std::invalid_argument("land mask size mismatch");
    land_ = std::move(mask);
}

void ProbabilityMap::splat(const Vec2 &p, double sigma, double mass)
{
    const double reach = 4.0 * sigma;
    const int ix0 = std::max(0, static_cast<int>(std::floor((p.x() - reach - extent_.x0) / cell_)));
    const int ix1 = std::min(nx_ - 1, static_cast<int>(std::floor((p.x() + reach - extent_.x0) / cell_)));
    const int iy0 = std::max(0, static_cast<int>(std::floor((p.y() - reach - extent_.y0) / cell_)));
    const int iy1 = std::min(ny_ - 1, static_cast<int>(std::floor((p.y() + reach - extent_.y0) / cell_)));
    const double norm = mass * cell_ * cell_ / (2.0 * kPi * sigma * sigma);
    for (int iy = iy0; iy <= iy1; ++iy) {
        for (int ix = ix0; ix <= ix1; ++ix) {
            const double r2 = (cell_center(ix, iy) - p).squaredNorm();
            at(ix, iy) += norm * std::exp(-0.5 * r2 / (sigma * sigma));
        }
    }
}

void ProbabilityMap::write(std::ostream &out) const
{
    out.precision(17);
    out << "origin " << extent_.x0 << ' ' << extent_.y0 << '\n';
    out << "cell " << cell_ << '\n';
    out << "size " << nx_ << ' ' << ny_ << '\n';
    for (int iy = 0; iy < ny_; ++iy) {
        for (int ix = 0; ix < nx_; ++ix) out << (ix ? " " : "") << at(ix, iy);
        out << '\n';
    }
}

ProbabilityMap ProbabilityMap::read(std::istream &in)
{
    std::string key;
    double ox = 0.0;
    double oy = 0.0;
    double cell = 0.0;
    int nx = 0;
    int ny = 0;
    if (!(in >> key >> ox >> oy) || key != "origin") throw std::runtime_error("map file: expected 'origin x y'");
    if (!(in >> key >> cell) || key != "cell") throw std::runtime_error("map file: expected 'cell c'");
    if (!(in >> key >> nx >> ny) || key != "size") throw std::runtime_error("map file: expected 'size nx ny'");
    ProbabilityMap map(Rect{ox, oy, ox + nx * cell, oy + ny * cell}, cell);
    for (double &v : map.values_)
        if (!(in >> v)) throw std::runtime_error("map file: truncated grid");
    return map;
}

void radar_scan(const std::vector<Vessel> &vessels, const RadarModel &radar, ProbabilityMap &map, Rng &rng)
{
    for (double &v : map.values()) v *= radar.decay;
    std::normal_distribution<double> noise(0.0, radar.sigma);
    for (const auto &vessel : vessels) {
        if ((vessel.position - radar.position).norm() > radar.range) continue;
        const Vec2 observed = vessel.position + Vec2(noise(rng), noise(rng));
        map.splat(observed, radar.sigma);
    }
    const auto &land = map.land_mask();
    for (std::size_t k = 0; k < land.size(); ++k)
        if (land[k]) map.values()[k] += radar.land_rate;
}

std::vector<Cluster> extract_targets(const ProbabilityMap &map, double threshold)
{
    std::vector<Cluster> clusters;
    const double peak = map.max();
    if (peak <= 0.0) return clusters;
    const double cut = threshold * peak;
    const int nx = map.nx();
    const int ny = map.ny();
    std::vector<char> seen(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
    auto idx = [nx](int ix, int iy) { return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix); };

    for (int sy = 0; sy < ny; ++sy) {
        for (int sx = 0; sx < nx; ++sx) {
            if (seen[idx(sx, sy)] || map.at(sx, sy) < cut) continue;
            std::vector<std::pair<int, int>> members{{sx, sy}};
            seen[idx(sx, sy)] = 1;
            for (std::size_t k = 0; k < members.size(); ++k) {
                const auto [cx, cy] = members[k];
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int x = cx + dx;
                        const int y = cy + dy;
                        if (x < 0 || y < 0 || x >= nx || y >= ny || seen[idx(x, y)] || map.at(x, y) < cut) continue;
                        seen[idx(x, y)] = 1;
                        members.emplace_back(x, y);
                    }
            }
            Cluster c;
            Vec2 acc = Vec2::Zero();
            double top = -1.0;
            for (const auto &[x, y] : members) {
                if (map.at(x, y) > top) {
                    top = map.at(x, y);
                    c.peak = map.cell_center(x, y);
                }
                c.mass += map.at(x, y);
                acc += map.at(x, y) * map.cell_center(x, y);
            }
            c.point = acc / c.mass;
            c.cells = static_cast<int>(members.size());
            for (const auto &[x, y] : members) c.radius = std::max(c.radius, (map.cell_center(x, y) - c.point).norm());
            clusters.push_back(c);
        }
    }
    return clusters;
}

} // namespace seasearch::sensing

#include "radial/nets.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "radial/errors.hpp"

namespace radial {
namespace {

constexpr int kMaxGridAmbient = 6;

// Ambient hash grid with cell width twice the chord of the radius, so the
// chord ball around a probe meets at most two cells per axis.
class NeighborIndex {
 public:
  NeighborIndex(const Manifold& sphere, double radius)
      : sphere_(sphere),
        radius_(radius),
        dims_(sphere.ambient_size()),
        use_grid_(dims_ <= kMaxGridAmbient),
        cell_(2.0 * 2.0 * std::sin(std::min(radius, std::numbers::pi) / 2.0)) {}

  bool has_neighbor(const Point& x) const {
    if (!use_grid_) {
      for (const Point& p : points_) {
        if (sphere_.distance(p, x) <= radius_) return true;
      }
      return false;
    }
    std::vector<long long> base(dims_);
    std::vector<int> side(dims_);
    for (int j = 0; j < dims_; ++j) {
      const double c = x.coords[j] / cell_;
      base[j] = static_cast<long long>(std::floor(c));
      side[j] = (c - static_cast<double>(base[j])) < 0.5 ? -1 : 1;
    }
    std::vector<long long> key(dims_);
    for (unsigned mask = 0; mask < (1u << dims_); ++mask) {
      for (int j = 0; j < dims_; ++j) key[j] = base[j] + (((mask >> j) & 1u) ? side[j] : 0);
      const auto it = grid_.find(hash(key));
      if (it == grid_.end()) continue;
      for (std::size_t idx : it->second) {
        if (sphere_.distance(points_[idx], x) <= radius_) return true;
      }
    }
    return false;
  }

  void insert(Point x) {
    if (use_grid_) {
      std::vector<long long> key(dims_);
      for (int j = 0; j < dims_; ++j) {
        key[j] = static_cast<long long>(std::floor(x.coords[j] / cell_));
      }
      grid_[hash(key)].push_back(points_.size());
    }
    points_.push_back(std::move(x));
  }

  std::vector<Point> release() { return std::move(points_); }
  std::size_t size() const { return points_.size(); }

 private:
  static std::uint64_t hash(const std::vector<long long>& key) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (long long k : key) h = splitmix64(h ^ static_cast<std::uint64_t>(k));
    return h;
  }

  const Manifold& sphere_;
  double radius_;
  int dims_;
  bool use_grid_;
  double cell_;
  std::vector<Point> points_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid_;
};

}  // namespace

Point uniform_in_ball(const Manifold& sphere, const Point& center, double r, Rng& rng) {
  const int m = sphere.dim();
  const double radius = std::min(r, std::numbers::pi);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double rho = 0.0;
  for (;;) {
    rho = radius * std::pow(unif(rng), 1.0 / m);
    const double ratio = rho > 0.0 ? std::sin(rho) / rho : 1.0;
    if (unif(rng) <= std::pow(ratio, m - 1)) break;
  }
  const Tangent dir = sphere.random_unit_tangent(center, rng);
  return sphere.exp_map(center, dir.scaled(rho));
}

NetResult greedy_net(const Manifold& sphere, const NetRegion& region, double radius, NetMode mode,
                     std::uint64_t seed, const NetOptions& opts) {
  if (sphere.kind() != ManifoldKind::kSphere) throw UsageError("greedy_net requires a sphere");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("net radius must be > 0");
  if (region.center) {
    sphere.validate(*region.center);
    if (!(region.radius > 0.0)) throw ParameterError("ball region radius must be > 0");
  }
  if (opts.rejection_limit == 0) throw UsageError("rejection_limit must be > 0");

  NetResult out;
  out.mode = mode;
  out.radius = radius;
  Rng rng(seed);
  const auto probe = [&]() {
    return region.center ? uniform_in_ball(sphere, *region.center, region.radius, rng)
                         : sphere.random_point(rng);
  };

  if (!region.center && radius >= std::numbers::pi) {
    out.points.push_back(probe());
    out.count = 1;
    out.probes = 1;
    out.saturated = true;
  } else {
    NeighborIndex index(sphere, radius);
    std::size_t streak = 0;
    while (streak < opts.rejection_limit) {
      if (opts.max_points && index.size() >= *opts.max_points) break;
      Point x = probe();
      ++out.probes;
      if (index.has_neighbor(x)) {
        ++streak;
      } else {
        index.insert(std::move(x));
        streak = 0;
      }
    }
    out.saturated = streak >= opts.rejection_limit;
    out.points = index.release();
    out.count = out.points.size();
  }

  if (mode == NetMode::kCover) {
    NeighborIndex index(sphere, radius);
    for (const Point& p : out.points) index.insert(p);
    for (std::size_t k = 0; k < opts.validation_probes; ++k) {
      if (!index.has_neighbor(probe())) ++out.cover_misses;
    }
    out.cover_probes = opts.validation_probes;
  }
  return out;
}

}  // namespace radial

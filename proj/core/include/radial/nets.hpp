#pragma once

// Greedy epsilon-nets on spheres by random sequential insertion.

#include <cstdint>
#include <optional>
#include <vector>

#include "radial/geometry.hpp"

namespace radial {

enum class NetMode { kCover, kPack };

struct NetRegion {
  std::optional<Point> center;  // empty: the whole sphere
  double radius = 0.0;          // ball radius when center is set

  static NetRegion full() { return {}; }
  static NetRegion ball(Point c, double r) { return {std::move(c), r}; }
};

struct NetResult {
  NetMode mode = NetMode::kCover;
  double radius = 0.0;
  std::vector<Point> points;
  std::size_t count = 0;
  std::size_t probes = 0;
  bool saturated = false;        // stopped by the rejection rule, not max_points
  std::size_t cover_probes = 0;  // cover mode: a-posteriori validation probes
  std::size_t cover_misses = 0;  // probes farther than radius from every point
};

struct NetOptions {
  std::size_t rejection_limit = 100000;
  std::optional<std::size_t> max_points;
  std::size_t validation_probes = 10000;
};

/// Draws uniform probes in the region and keeps those farther than radius
/// from every kept point, until rejection_limit consecutive probes fail.
/// The result is a maximal packing and hence a cover at the same radius.
NetResult greedy_net(const Manifold& sphere, const NetRegion& region, double radius, NetMode mode,
                     std::uint64_t seed, const NetOptions& opts = {});

/// Uniform point in the geodesic ball B(center, r) of a sphere.
Point uniform_in_ball(const Manifold& sphere, const Point& center, double r, Rng& rng);

}  // namespace radial

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fermat/core.hpp"

namespace fermat::testing {

inline Point uniform_point(std::mt19937_64& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < p.size(); ++c) p(c) = u(rng);
  return p;
}

/// m anchors uniform in the unit box [0,1]^n.
inline Instance random_instance(std::mt19937_64& rng, std::size_t m, std::size_t n = 2) {
  std::vector<Point> anchors;
  for (std::size_t i = 0; i < m; ++i) anchors.push_back(uniform_point(rng, n));
  return Instance(std::move(anchors));
}

inline Instance random_weighted_instance(std::mt19937_64& rng, std::size_t m, std::size_t n = 2) {
  std::vector<Point> anchors;
  std::vector<double> weights;
  std::uniform_real_distribution<double> w(0.2, 3.0);
  for (std::size_t i = 0; i < m; ++i) {
    anchors.push_back(uniform_point(rng, n));
    weights.push_back(w(rng));
  }
  return Instance(std::move(anchors), std::move(weights));
}

/// Random point at least `gap` away from every anchor.
inline Point random_non_anchor(std::mt19937_64& rng, const Instance& inst, double gap = 1e-3,
                               double lo = -0.5, double hi = 1.5) {
  for (;;) {
    Point x = uniform_point(rng, inst.dim(), lo, hi);
    bool ok = true;
    for (const Point& a : inst.anchors()) ok = ok && (x - a).norm() > gap;
    if (ok) return x;
  }
}

/// Rotation by `angle` in the plane followed by a translation.
struct RigidMotion2 {
  double angle = 0.0;
  Point shift = Point::Zero(2);

  Point operator()(const Point& p) const {
    Point q(2);
    q << std::cos(angle) * p(0) - std::sin(angle) * p(1),
        std::sin(angle) * p(0) + std::cos(angle) * p(1);
    return q + shift;
  }

  Instance operator()(const Instance& inst) const {
    std::vector<Point> anchors;
    for (const Point& a : inst.anchors()) anchors.push_back((*this)(a));
    return Instance(std::move(anchors),
                    std::vector<double>(inst.weights().begin(), inst.weights().end()));
  }
};

}  // namespace fermat::testing

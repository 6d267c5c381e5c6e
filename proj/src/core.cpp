#include "fermat/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fermat/errors.hpp"

namespace fermat {
namespace {

bool all_finite(const Point& p) { return p.allFinite(); }

}  // namespace

Instance::Instance(std::vector<Point> anchors, std::vector<double> weights) {
  if (anchors.empty()) throw InvalidArgument("instance needs at least one anchor");
  if (weights.empty()) weights.assign(anchors.size(), 1.0);
  if (weights.size() != anchors.size())
    throw InvalidArgument("weights length " + std::to_string(weights.size()) +
                          " does not match anchor count " + std::to_string(anchors.size()));

  dim_ = static_cast<std::size_t>(anchors.front().size());
  if (dim_ == 0) throw InvalidArgument("anchors must have dimension >= 1");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (static_cast<std::size_t>(anchors[i].size()) != dim_)
      throw InvalidArgument("anchor " + std::to_string(i) + " has dimension " +
                            std::to_string(anchors[i].size()) + ", expected " +
                            std::to_string(dim_));
    if (!all_finite(anchors[i]))
      throw InvalidArgument("anchor " + std::to_string(i) + " has a non-finite coordinate");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw InvalidArgument("weight " + std::to_string(i) + " must be positive and finite");
  }
  input_size_ = anchors.size();

  // Merge near-duplicates. Sorting by first coordinate bounds the scan to a
  // window of candidates whose first coordinates are within the snap band.
  std::vector<std::size_t> order(anchors.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return anchors[a](0) < anchors[b](0);
  });
  std::vector<std::size_t> merged_into(anchors.size(), anchors.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    const std::size_t i = order[p];
    if (merged_into[i] != anchors.size()) continue;
    merged_into[i] = i;
    const double band = kSnapRelTol * (1.0 + anchors[i].norm());
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const std::size_t j = order[q];
      if (anchors[j](0) - anchors[i](0) > band) break;
      if (merged_into[j] == anchors.size() && (anchors[j] - anchors[i]).norm() <= band)
        merged_into[j] = i;
    }
  }
  // Keep first-occurrence order so indices stay predictable for callers.
  std::vector<std::size_t> slot(anchors.size(), anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const std::size_t root = merged_into[i];
    if (slot[root] == anchors.size()) {
      slot[root] = anchors_.size();
      anchors_.push_back(anchors[root]);
      weights_.push_back(0.0);
    }
    weights_[slot[root]] += weights[i];
  }
  for (double w : weights_) total_weight_ += w;
}

bool Instance::uniform_weights() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return w == weights_.front(); });
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

void check_point(const Instance& inst, const Point& x) {
  if (static_cast<std::size_t>(x.size()) != inst.dim())
    throw InvalidArgument("point has dimension " + std::to_string(x.size()) +
                          ", instance dimension is " + std::to_string(inst.dim()));
  if (!all_finite(x)) throw InvalidArgument("point has a non-finite coordinate");
}

bool snaps_to(const Point& x, const Point& a) {
  return (x - a).norm() <= kSnapRelTol * (1.0 + a.norm());
}

std::optional<std::size_t> snapped_anchor(const Instance& inst, const Point& x) {
  std::optional<std::size_t> hit;
  double best = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Point& a = inst.anchor(i);
    const double d = (x - a).norm();
    if (d <= kSnapRelTol * (1.0 + a.norm()) && (!hit || d < best)) {
      hit = i;
      best = d;
    }
  }
  return hit;
}

double objective(const Instance& inst, const Point& x) {
  check_point(inst, x);
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i)
    sum += inst.weight(i) * (x - inst.anchor(i)).norm();
  return sum;
}

double objective_decrease(const Instance& inst, const Point& from, const Point& to) {
  check_point(inst, from);
  check_point(inst, to);
  const Point diff = from - to;
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Point u = from - inst.anchor(i);
    const Point v = to - inst.anchor(i);
    const double denom = u.norm() + v.norm();
    if (denom == 0.0) continue;
    sum += inst.weight(i) * diff.dot(u + v) / denom;
  }
  return sum;
}

Point gradient(const Instance& inst, const Point& x) {
  check_point(inst, x);
  if (auto k = snapped_anchor(inst, x))
    throw AtVertexError("objective is not differentiable at anchor " + std::to_string(*k) +
                            "; use subdiff::certify or subdiff::resultant",
                        *k);
  Point g = Point::Zero(static_cast<Eigen::Index>(inst.dim()));
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Point d = x - inst.anchor(i);
    g += inst.weight(i) * d / d.norm();
  }
  return g;
}

LineFit fit_line(const Instance& inst) {
  const auto farthest_from = [&](const Point& p) {
    std::size_t idx = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const double d = (inst.anchor(i) - p).squaredNorm();
      if (d > best) {
        best = d;
        idx = i;
      }
    }
    return idx;
  };

  const std::size_t a = farthest_from(inst.anchor(0));
  const std::size_t b = farthest_from(inst.anchor(a));

  LineFit fit;
  fit.origin = inst.anchor(a);
  const Point span_vec = inst.anchor(b) - inst.anchor(a);
  fit.spread = span_vec.norm();
  if (fit.spread == 0.0) {
    fit.direction = Point::Zero(static_cast<Eigen::Index>(inst.dim()));
    return fit;
  }
  fit.direction = span_vec / fit.spread;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Point rel = inst.anchor(i) - fit.origin;
    const Point perp = rel - rel.dot(fit.direction) * fit.direction;
    fit.max_residual = std::max(fit.max_residual, perp.norm());
  }
  return fit;
}

bool collinear(const Instance& inst, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("collinearity tolerance must be >= 0");
  if (inst.size() <= 2) return true;
  const LineFit fit = fit_line(inst);
  return fit.max_residual <= tol * fit.spread;
}

Point in_hull_combination(const Instance& inst, std::span<const double> coeffs) {
  if (coeffs.size() != inst.size())
    throw InvalidArgument("expected " + std::to_string(inst.size()) + " coefficients, got " +
                          std::to_string(coeffs.size()));
  double total = 0.0;
  for (double c : coeffs) {
    if (!(c >= 0.0)) throw InvalidArgument("convex combination coefficients must be >= 0");
    total += c;
  }
  if (std::abs(total - 1.0) > kHullSumTol)
    throw InvalidArgument("convex combination coefficients must sum to 1");
  Point x = Point::Zero(static_cast<Eigen::Index>(inst.dim()));
  for (std::size_t i = 0; i < inst.size(); ++i) x += coeffs[i] * inst.anchor(i);
  return x;
}

}  // namespace fermat

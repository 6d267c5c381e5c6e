#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fermat {

using Point = Eigen::VectorXd;

// x sits "at" anchor a when ||x - a|| <= kSnapRelTol * (1 + ||a||).
inline constexpr double kSnapRelTol = 1e-12;

// Tolerance on the coefficient sum accepted by in_hull_combination.
inline constexpr double kHullSumTol = 1e-12;

/// The problem data: m anchor points in R^n with positive weights.
///
/// Anchors closer than the snap tolerance are merged at construction and
/// their weights summed, so every stored anchor is distinct. Indices used by
/// the rest of the library refer to the merged anchor list.
class Instance {
 public:
  explicit Instance(std::vector<Point> anchors, std::vector<double> weights = {});

  std::size_t size() const noexcept { return anchors_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  // Number of anchors supplied before duplicate merging.
  std::size_t input_size() const noexcept { return input_size_; }

  const Point& anchor(std::size_t i) const { return anchors_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  std::span<const Point> anchors() const noexcept { return anchors_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double total_weight() const noexcept { return total_weight_; }
  // True when every weight is the same value.
  bool uniform_weights() const noexcept;

 private:
  std::vector<Point> anchors_;
  std::vector<double> weights_;
  std::size_t dim_ = 0;
  std::size_t input_size_ = 0;
  double total_weight_ = 0.0;
};

/// Convenience for literals: `make_point({0.5, 0.5})`.
Point make_point(std::initializer_list<double> coords);

/// Throws InvalidArgument unless x has the instance dimension and finite coordinates.
void check_point(const Instance& inst, const Point& x);

/// True when ||x - a|| is within the snap band of a.
bool snaps_to(const Point& x, const Point& a);

/// Index of the anchor x snaps to, if any. Anchors are distinct after
/// merging, so at most one can match for well-separated data; the nearest
/// matching anchor is returned otherwise.
std::optional<std::size_t> snapped_anchor(const Instance& inst, const Point& x);

/// Weighted sum of distances, accumulated in anchor index order.
double objective(const Instance& inst, const Point& x);

/// phi(from) - phi(to) without the cancellation of subtracting two objective
/// values. Each term uses ||u|| - ||v|| = <u - v, u + v> / (||u|| + ||v||).
double objective_decrease(const Instance& inst, const Point& from, const Point& to);

/// Sum_i w_i (x - a_i) / ||x - a_i||. Throws AtVertexError at an anchor.
Point gradient(const Instance& inst, const Point& x);

/// Line through the two mutually farthest anchors found by a double sweep.
struct LineFit {
  Point origin;     // first endpoint of the fitted pair
  Point direction;  // unit vector, zero when all anchors coincide
  double spread = 0.0;        // distance between the fitted pair
  double max_residual = 0.0;  // largest perpendicular distance of an anchor to the line
};

LineFit fit_line(const Instance& inst);

/// True iff every anchor lies within tol * spread of the fitted line.
/// A single anchor is collinear.
bool collinear(const Instance& inst, double tol);

/// Sum_i coeffs_i * a_i for coefficients on the probability simplex.
Point in_hull_combination(const Instance& inst, std::span<const double> coeffs);

}  // namespace fermat

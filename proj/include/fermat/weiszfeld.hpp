#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fermat/core.hpp"
#include "fermat/subdiff.hpp"

namespace fermat::weiszfeld {

enum class EscapePolicy {
  certify_and_stop,  // report the captured vertex with its nonzero residual
  nudge,             // step off the vertex along R_j and keep iterating
};

struct SolverConfig {
  double step_tol = 1e-10;  // relative: ||x_{k+1} - x_k|| <= step_tol * (1 + ||x_k||)
  double cert_tol = subdiff::kDefaultCertTol;
  std::size_t max_iter = 100000;
  EscapePolicy escape_policy = EscapePolicy::nudge;
  // Nudge length as a fraction of the anchor spread; halved on each repeat capture.
  double nudge_scale = 1e-3;
  // Passed to core::collinear to route degenerate data to the 1-D median.
  double collinear_tol = 1e-12;
  bool record_trace = true;

  void validate() const;
};

enum class StepKind {
  start,        // x_0
  weiszfeld,    // x_{k+1} = F(x_k)
  vertex_jump,  // moved onto an anchor whose resultant test certifies it optimal
  nudge,        // escape from a non-optimal captured anchor
};

const char* to_string(StepKind kind);

struct TraceStep {
  std::size_t k = 0;
  Point x;
  double phi = 0.0;
  double step_norm = 0.0;
  // phi(previous x) - phi(x), computed without cancellation. 0 for the start.
  double decrease = 0.0;
  std::optional<std::size_t> vertex_hit;
  StepKind kind = StepKind::start;
};

struct IterationTrace {
  std::vector<TraceStep> steps;
};

enum class Status { converged, max_iter, collinear_degenerate };

const char* to_string(Status status);

struct Solution {
  Point point;
  double value = 0.0;
  subdiff::Certificate certificate;
  std::size_t iterations = 0;
  Status status = Status::max_iter;
  // False when the minimizer set is a segment (collinear ties, e.g. m = 2).
  bool unique = true;
  std::size_t vertex_captures = 0;
};

struct SolveResult {
  Solution solution;
  IterationTrace trace;
};

/// Weighted centroid sum w_i a_i / sum w_i; the default starting point.
Point weighted_centroid(const Instance& inst);

/// Convex-combination coefficients of F(x): (w_i / ||x - a_i||) normalized.
/// At an anchor this is the one-hot vector of that anchor.
std::vector<double> f_step_coefficients(const Instance& inst, const Point& x);

/// The Weiszfeld map. Fixed on the anchors: F(a_j) = a_j.
Point f_step(const Instance& inst, const Point& x);

/// g_x(z) = sum_i w_i ||z - a_i||^2 / ||x - a_i||, the quadratic majorizer
/// minimized by F(x). g_x(x) = phi(x).
double g_surrogate(const Instance& inst, const Point& x, const Point& z);

struct DescentCheck {
  Point fx;
  double step_norm = 0.0;
  bool moved = false;      // ||F(x) - x|| beyond the snap band
  bool decreased = false;  // phi(F(x)) < phi(x)
  double delta = 0.0;      // phi(x) - phi(F(x))
};

DescentCheck descent_check(const Instance& inst, const Point& x);

/// Samples ||F(x) - a_k|| / ||x - a_k|| on a sphere of `radius` around a
/// non-optimal anchor. As radius -> 0 the ratio tends to ||R_k|| / w_k > 1.
struct ExpansionRatio {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double resultant_norm = 0.0;
  double limit = 0.0;  // ||R_k|| / w_k
};

ExpansionRatio expansion_ratio(const Instance& inst, std::size_t k, double radius,
                               std::size_t samples, std::uint64_t seed = 0x5eed);

/// Minimizes the weighted distance sum. Collinear data goes to an exact
/// weighted 1-D median; everything else runs the Weiszfeld iteration with
/// vertex-capture handling.
SolveResult solve(const Instance& inst, const std::optional<Point>& x0 = std::nullopt,
                  const SolverConfig& cfg = {});

}  // namespace fermat::weiszfeld

#pragma once

#include <cstddef>
#include <vector>

#include "fermat/core.hpp"

// Brute-force checks for the solvers. Nothing here calls into the objective,
// gradient, subdiff or weiszfeld code; only the Instance data is shared.
namespace fermat::oracle {

inline constexpr std::size_t kMaxGridDim = 3;
inline constexpr int kDefaultLevels = 6;
inline constexpr int kDefaultDivisions = 48;

struct GridResult {
  Point best_point;
  double best_value = 0.0;
  double resolution = 0.0;  // final cell size (largest over axes)
  std::size_t cells_evaluated = 0;
  std::vector<double> level_values;  // incumbent value after each level
};

/// Evaluates phi on a (divisions+1)^n lattice over the anchors' bounding box,
/// then re-grids a box three cells wide around the incumbent, `levels` times
/// in total. The box is widened to include any cell whose convexity lower
/// bound does not exceed the incumbent, so poorly conditioned instances cannot
/// strand the search away from the minimizer. Ties go to the
/// lexicographically smaller point.
GridResult grid_minimize(const Instance& inst, int levels = kDefaultLevels,
                         int divisions = kDefaultDivisions);

/// Worst-case excess of best_value over the true minimum for a lattice of
/// this resolution: (sum w_i) * resolution * sqrt(n).
double coverage_bound(const Instance& inst, const GridResult& result);

/// Central differences (phi(x + h e_j) - phi(x - h e_j)) / 2h. Throws
/// AtVertexError unless x is farther than 10 h from every anchor.
Point fd_gradient(const Instance& inst, const Point& x, double h = 1e-6);

}  // namespace fermat::oracle

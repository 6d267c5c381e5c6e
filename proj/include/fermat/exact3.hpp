#pragma once

#include <cstddef>
#include <optional>

#include "fermat/core.hpp"
#include "fermat/subdiff.hpp"

namespace fermat::exact3 {

enum class CaseKind { vertex, interior, collinear };

const char* to_string(CaseKind kind);

struct TriangleCase {
  CaseKind kind = CaseKind::interior;
  std::optional<std::size_t> vertex_index;  // input position (0..2) for vertex/collinear
  Point point;
};

struct Classification {
  CaseKind kind = CaseKind::interior;
  std::optional<std::size_t> vertex_index;
};

/// Collinear if core::collinear holds at `collinear_tol`; vertex at the
/// largest angle when its cosine is <= -1/2 + angle_tol (i.e. >= 120 degrees,
/// ties included); otherwise interior.
Classification classify(const Point& a1, const Point& a2, const Point& a3,
                        double angle_tol = subdiff::kDefaultAngleTol,
                        double collinear_tol = 1e-12);

/// Torricelli point by the two-equilateral-triangle construction: apexes D on
/// AB and E on AC are erected away from the third vertex, and the lines DC
/// and BE meet at the point seeing every side under 120 degrees.
///
/// The three inputs are put in lexicographic order first so the result does
/// not depend on argument order. Throws NumericDegeneracy when the two lines
/// are too close to parallel.
Point torricelli_point(const Point& a1, const Point& a2, const Point& a3,
                       double angle_tol = subdiff::kDefaultAngleTol);

TriangleCase solve_exact3(const Point& a1, const Point& a2, const Point& a3,
                          double angle_tol = subdiff::kDefaultAngleTol);

}  // namespace fermat::exact3

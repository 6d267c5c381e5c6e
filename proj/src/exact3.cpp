#include "fermat/exact3.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fermat/errors.hpp"

namespace fermat::exact3 {
namespace {

void require_plane(const Point& a1, const Point& a2, const Point& a3) {
  if (a1.size() != 2 || a2.size() != 2 || a3.size() != 2)
    throw InvalidArgument("the three-point solver works in the plane (n = 2) only");
  if (!a1.allFinite() || !a2.allFinite() || !a3.allFinite())
    throw InvalidArgument("triangle vertex has a non-finite coordinate");
}

double cross(const Point& u, const Point& v) { return u(0) * v(1) - u(1) * v(0); }

// Cosine of the interior angle at p.
double angle_cosine(const Point& p, const Point& q, const Point& r) {
  const Point u = q - p;
  const Point v = r - p;
  return u.dot(v) / (u.norm() * v.norm());
}

// Apex of the equilateral triangle on segment pq lying on the opposite side
// of line pq from `away`.
Point outward_apex(const Point& p, const Point& q, const Point& away) {
  const Point mid = 0.5 * (p + q);
  const Point edge = q - p;
  Point normal(2);
  normal << -edge(1), edge(0);
  const double h = std::sqrt(3.0) / 2.0;
  Point apex = mid + h * normal;
  if (cross(edge, away - p) * cross(edge, apex - p) > 0.0) apex = mid - h * normal;
  return apex;
}

bool lex_less(const Point& a, const Point& b) {
  return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
}

}  // namespace

const char* to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::vertex:
      return "vertex";
    case CaseKind::interior:
      return "interior";
    case CaseKind::collinear:
      return "collinear";
  }
  return "unknown";
}

Classification classify(const Point& a1, const Point& a2, const Point& a3, double angle_tol,
                        double collinear_tol) {
  require_plane(a1, a2, a3);
  const Instance inst({a1, a2, a3});
  Classification out;
  if (inst.size() < 3 || collinear(inst, collinear_tol)) {
    out.kind = CaseKind::collinear;
    return out;
  }
  const std::array<double, 3> cosines = {angle_cosine(a1, a2, a3), angle_cosine(a2, a3, a1),
                                         angle_cosine(a3, a1, a2)};
  const auto widest = static_cast<std::size_t>(
      std::min_element(cosines.begin(), cosines.end()) - cosines.begin());
  if (cosines[widest] <= -0.5 + angle_tol) {
    out.kind = CaseKind::vertex;
    out.vertex_index = widest;
  } else {
    out.kind = CaseKind::interior;
  }
  return out;
}

Point torricelli_point(const Point& a1, const Point& a2, const Point& a3, double angle_tol) {
  require_plane(a1, a2, a3);
  if (classify(a1, a2, a3, angle_tol).kind != CaseKind::interior)
    throw InvalidArgument("torricelli_point needs a triangle with every angle below 120 degrees");

  std::array<Point, 3> v = {a1, a2, a3};
  std::sort(v.begin(), v.end(), lex_less);
  const Point& A = v[0];
  const Point& B = v[1];
  const Point& C = v[2];

  const Point D = outward_apex(A, B, C);
  const Point E = outward_apex(A, C, B);

  // D + s (C - D) = B + t (E - B)  ->  [C - D, B - E] [s; t] = B - D
  const Point u = C - D;
  const Point w = B - E;
  const Point rhs = B - D;
  const double det = cross(u, w);
  const double scale =
      std::max({(B - A).squaredNorm(), (C - A).squaredNorm(), (C - B).squaredNorm()});
  if (std::abs(det) < 1e-14 * scale)
    throw NumericDegeneracy("construction lines DC and BE are nearly parallel");
  const double s = cross(rhs, w) / det;
  return D + s * u;
}

TriangleCase solve_exact3(const Point& a1, const Point& a2, const Point& a3, double angle_tol) {
  require_plane(a1, a2, a3);
  const Classification c = classify(a1, a2, a3, angle_tol);
  const std::array<const Point*, 3> pts = {&a1, &a2, &a3};
  TriangleCase out;
  out.kind = c.kind;
  switch (c.kind) {
    case CaseKind::collinear: {
      // Middle anchor along the fitted line. Coincident inputs collapse to a
      // repeated point, which is then the answer.
      const Instance inst({a1, a2, a3});
      const LineFit fit = fit_line(inst);
      std::array<std::size_t, 3> order = {0, 1, 2};
      std::array<double, 3> t{};
      for (std::size_t i = 0; i < 3; ++i) t[i] = (*pts[i] - fit.origin).dot(fit.direction);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
      out.vertex_index = order[1];
      out.point = *pts[order[1]];
      break;
    }
    case CaseKind::vertex:
      out.vertex_index = c.vertex_index;
      out.point = *pts[*c.vertex_index];
      break;
    case CaseKind::interior:
      out.point = torricelli_point(a1, a2, a3, angle_tol);
      break;
  }
  return out;
}

}  // namespace fermat::exact3

#include "fermat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fermat/errors.hpp"

namespace fermat::oracle {
namespace {

double distance_sum(const Instance& inst, const Point& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    double sq = 0.0;
    for (Eigen::Index c = 0; c < x.size(); ++c) {
      const double d = x(c) - inst.anchor(i)(c);
      sq += d * d;
    }
    total += inst.weight(i) * std::sqrt(sq);
  }
  return total;
}

// Some element of the subdifferential at x: anchors x sits on contribute the
// zero element of their ball.
Point subgradient(const Instance& inst, const Point& x) {
  Point s = Point::Zero(x.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Point d = x - inst.anchor(i);
    const double len = d.norm();
    if (len > 0.0) s += inst.weight(i) * d / len;
  }
  return s;
}

bool lex_less(const Point& a, const Point& b) {
  for (Eigen::Index c = 0; c < a.size(); ++c) {
    if (a(c) < b(c)) return true;
    if (a(c) > b(c)) return false;
  }
  return false;
}

}  // namespace

GridResult grid_minimize(const Instance& inst, int levels, int divisions) {
  const std::size_t n = inst.dim();
  if (n > kMaxGridDim)
    throw UnsupportedError("grid oracle supports n <= 3, got n = " + std::to_string(n));
  if (levels < 1) throw InvalidArgument("levels must be >= 1");
  if (divisions < 1) throw InvalidArgument("divisions must be >= 1");

  const auto dims = static_cast<Eigen::Index>(n);
  Point box_lo = inst.anchor(0);
  Point box_hi = inst.anchor(0);
  for (const Point& a : inst.anchors()) {
    box_lo = box_lo.cwiseMin(a);
    box_hi = box_hi.cwiseMax(a);
  }

  GridResult out;
  out.best_value = std::numeric_limits<double>::infinity();
  Point lo = box_lo;
  Point hi = box_hi;
  std::vector<int> idx(n);
  Point p(dims);

  // Lattice nodes with their convexity lower bound over the node's cell:
  // phi(y) >= phi(p) + <s, y - p> >= phi(p) - sum_j |s_j| * cell_j / 2.
  std::vector<std::pair<Point, double>> nodes;

  for (int level = 0; level < levels; ++level) {
    const Point cell = (hi - lo) / divisions;
    const Point half = 0.5 * cell;
    nodes.clear();
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (Eigen::Index c = 0; c < dims; ++c)
        p(c) = idx[c] == divisions ? hi(c) : lo(c) + idx[c] * cell(c);
      const double v = distance_sum(inst, p);
      ++out.cells_evaluated;
      if (v < out.best_value || (v == out.best_value && lex_less(p, out.best_point))) {
        out.best_value = v;
        out.best_point = p;
      }
      nodes.emplace_back(p, v - subgradient(inst, p).cwiseAbs().dot(half));
      std::size_t c = 0;
      while (c < n && ++idx[c] > divisions) idx[c++] = 0;
      if (c == n) break;
    }
    out.level_values.push_back(out.best_value);
    out.resolution = cell.maxCoeff();

    // Next box: three cells around the incumbent, grown to cover every cell
    // the lower bound cannot rule out, so the minimizer never leaves the box.
    Point next_lo = out.best_point - 1.5 * cell;
    Point next_hi = out.best_point + 1.5 * cell;
    const double slack = 1e-12 * (1.0 + std::abs(out.best_value));
    for (const auto& [node, lower] : nodes) {
      if (lower > out.best_value + slack) continue;
      next_lo = next_lo.cwiseMin(node - half);
      next_hi = next_hi.cwiseMax(node + half);
    }
    lo = next_lo.cwiseMax(lo);
    hi = next_hi.cwiseMin(hi);
  }
  return out;
}

double coverage_bound(const Instance& inst, const GridResult& result) {
  return inst.total_weight() * result.resolution * std::sqrt(static_cast<double>(inst.dim()));
}

Point fd_gradient(const Instance& inst, const Point& x, double h) {
  if (!(h > 0.0)) throw InvalidArgument("step h must be positive");
  if (static_cast<std::size_t>(x.size()) != inst.dim())
    throw InvalidArgument("point dimension does not match the instance");
  for (std::size_t i = 0; i < inst.size(); ++i)
    if ((x - inst.anchor(i)).norm() <= 10.0 * h)
      throw AtVertexError("finite differences need x farther than 10h from anchor " +
                              std::to_string(i),
                          i);
  Point g(x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Point up = x;
    Point down = x;
    up(c) += h;
    down(c) -= h;
    g(c) = (distance_sum(inst, up) - distance_sum(inst, down)) / (2.0 * h);
  }
  return g;
}

}  // namespace fermat::oracle

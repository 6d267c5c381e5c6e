#include "fermat/weiszfeld.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "fermat/errors.hpp"

namespace fermat::weiszfeld {
namespace {

using subdiff::Certificate;
using subdiff::CertificateKind;
using subdiff::VertexReport;

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Exact weighted median of the anchors projected onto the fitted line.
// Ties (cumulative weight hitting exactly half) leave a whole segment optimal;
// its midpoint is returned.
SolveResult solve_collinear(const Instance& inst, const SolverConfig& cfg) {
  const LineFit fit = fit_line(inst);
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> t(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    t[i] = (inst.anchor(i) - fit.origin).dot(fit.direction);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });

  const double total = inst.total_weight();
  const double half = 0.5 * total;
  const double tie_band = 1e-12 * total;
  double cum = 0.0;
  std::size_t p = 0;
  for (; p < order.size(); ++p) {
    cum += inst.weight(order[p]);
    if (cum >= half - tie_band) break;
  }
  p = std::min(p, order.size() - 1);

  Solution sol;
  sol.status = Status::collinear_degenerate;
  if (cum <= half + tie_band && p + 1 < order.size()) {
    sol.point = 0.5 * (inst.anchor(order[p]) + inst.anchor(order[p + 1]));
    sol.unique = false;
  } else {
    sol.point = inst.anchor(order[p]);
  }
  sol.value = objective(inst, sol.point);
  sol.certificate = subdiff::certify(inst, sol.point, cfg.cert_tol);

  SolveResult out{std::move(sol), {}};
  if (cfg.record_trace)
    out.trace.steps.push_back({0, out.solution.point, out.solution.value, 0.0, 0.0,
                               snapped_anchor(inst, out.solution.point), StepKind::start});
  return out;
}

double nearest_other_anchor(const Instance& inst, std::size_t j) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (i != j) best = std::min(best, (inst.anchor(i) - inst.anchor(j)).norm());
  return best;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(step_tol > 0.0)) throw InvalidArgument("step_tol must be positive");
  if (!(cert_tol > 0.0)) throw InvalidArgument("cert_tol must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (!(nudge_scale > 0.0)) throw InvalidArgument("nudge_scale must be positive");
  if (!(collinear_tol >= 0.0)) throw InvalidArgument("collinear_tol must be >= 0");
}

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::start:
      return "start";
    case StepKind::weiszfeld:
      return "weiszfeld";
    case StepKind::vertex_jump:
      return "vertex-jump";
    case StepKind::nudge:
      return "nudge";
  }
  return "unknown";
}

const char* to_string(Status status) {
  switch (status) {
    case Status::converged:
      return "converged";
    case Status::max_iter:
      return "max-iter";
    case Status::collinear_degenerate:
      return "collinear-degenerate";
  }
  return "unknown";
}

Point weighted_centroid(const Instance& inst) {
  Point c = Point::Zero(as_index(inst.dim()));
  for (std::size_t i = 0; i < inst.size(); ++i) c += inst.weight(i) * inst.anchor(i);
  return c / inst.total_weight();
}

std::vector<double> f_step_coefficients(const Instance& inst, const Point& x) {
  check_point(inst, x);
  std::vector<double> coeffs(inst.size(), 0.0);
  if (auto j = snapped_anchor(inst, x)) {
    coeffs[*j] = 1.0;
    return coeffs;
  }
  double denom = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    coeffs[i] = inst.weight(i) / (x - inst.anchor(i)).norm();
    denom += coeffs[i];
  }
  for (double& c : coeffs) c /= denom;
  return coeffs;
}

Point f_step(const Instance& inst, const Point& x) {
  check_point(inst, x);
  if (auto j = snapped_anchor(inst, x)) return inst.anchor(*j);
  Point num = Point::Zero(as_index(inst.dim()));
  double denom = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const double c = inst.weight(i) / (x - inst.anchor(i)).norm();
    num += c * inst.anchor(i);
    denom += c;
  }
  return num / denom;
}

double g_surrogate(const Instance& inst, const Point& x, const Point& z) {
  check_point(inst, x);
  check_point(inst, z);
  if (auto j = snapped_anchor(inst, x))
    throw AtVertexError("surrogate is undefined when x is at anchor " + std::to_string(*j), *j);
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i)
    sum += inst.weight(i) * (z - inst.anchor(i)).squaredNorm() / (x - inst.anchor(i)).norm();
  return sum;
}

DescentCheck descent_check(const Instance& inst, const Point& x) {
  DescentCheck out;
  out.fx = f_step(inst, x);
  out.step_norm = (out.fx - x).norm();
  out.moved = out.step_norm > kSnapRelTol * (1.0 + x.norm());
  out.delta = objective_decrease(inst, x, out.fx);
  out.decreased = out.delta > 0.0;
  return out;
}

ExpansionRatio expansion_ratio(const Instance& inst, std::size_t k, double radius,
                               std::size_t samples, std::uint64_t seed) {
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  const VertexReport rep = subdiff::resultant(inst, k, 0.0);
  if (rep.optimal)
    throw InvalidArgument("anchor " + std::to_string(k) +
                          " is optimal (||R_k|| <= w_k); the expansion ratio needs a "
                          "non-optimal anchor");
  if (nearest_other_anchor(inst, k) <= radius)
    throw InvalidArgument("another anchor lies within the sampling radius");

  const Point& ak = inst.anchor(k);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  ExpansionRatio out;
  out.resultant_norm = rep.resultant_norm;
  out.limit = rep.resultant_norm / rep.weight;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Point dir(as_index(inst.dim()));
    do {
      for (Eigen::Index c = 0; c < dir.size(); ++c) dir(c) = normal(rng);
    } while (dir.norm() == 0.0);
    const Point offset = radius * dir / dir.norm();
    // F(x) - a_k = sum_{i != k} w_i (a_i - a_k) / d_i  /  sum_i w_i / d_i,
    // evaluated relative to a_k so the tiny displacement keeps full precision.
    Point num = Point::Zero(as_index(inst.dim()));
    double denom = inst.weight(k) / offset.norm();
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (i == k) continue;
      const Point rel = inst.anchor(i) - ak;
      const double c = inst.weight(i) / (offset - rel).norm();
      num += c * rel;
      denom += c;
    }
    const double ratio = (num / denom).norm() / offset.norm();
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

SolveResult solve(const Instance& inst, const std::optional<Point>& x0, const SolverConfig& cfg) {
  cfg.validate();
  if (x0) check_point(inst, *x0);

  if (inst.size() == 1) {
    SolveResult out;
    Solution& sol = out.solution;
    sol.point = inst.anchor(0);
    sol.value = 0.0;
    sol.certificate = subdiff::certify(inst, sol.point, cfg.cert_tol);
    sol.status = Status::converged;
    if (cfg.record_trace)
      out.trace.steps.push_back({0, sol.point, 0.0, 0.0, 0.0, 0, StepKind::start});
    return out;
  }
  if (collinear(inst, cfg.collinear_tol)) return solve_collinear(inst, cfg);

  SolveResult out;
  Solution& sol = out.solution;
  auto& steps = out.trace.steps;
  const auto record = [&](std::size_t k, const Point& x, double step, double decrease,
                          std::optional<std::size_t> hit, StepKind kind) {
    if (cfg.record_trace) steps.push_back({k, x, objective(inst, x), step, decrease, hit, kind});
  };

  const double spread = fit_line(inst).spread;
  std::vector<std::optional<VertexReport>> vertex_cache(inst.size());
  const auto vertex_report = [&](std::size_t j) -> const VertexReport& {
    if (!vertex_cache[j]) vertex_cache[j] = subdiff::resultant(inst, j, cfg.cert_tol);
    return *vertex_cache[j];
  };

  Point x = x0 ? *x0 : weighted_centroid(inst);
  record(0, x, 0.0, 0.0, snapped_anchor(inst, x), StepKind::start);

  const std::size_t m = inst.size();
  std::size_t iter = 0;
  sol.status = Status::max_iter;

  while (iter < cfg.max_iter) {
    if (auto j = snapped_anchor(inst, x)) {
      const VertexReport& rep = vertex_report(*j);
      if (rep.optimal) {
        x = inst.anchor(*j);
        sol.status = Status::converged;
        break;
      }
      if (cfg.escape_policy == EscapePolicy::certify_and_stop) break;

      // Step along R_j, the steepest-descent direction at a_j. Stay well short
      // of the nearest other anchor and require an actual decrease.
      ++sol.vertex_captures;
      double t = cfg.nudge_scale * spread * std::ldexp(1.0, -static_cast<int>(sol.vertex_captures - 1));
      t = std::min(t, 0.5 * nearest_other_anchor(inst, *j));
      const Point dir = rep.resultant / rep.resultant_norm;
      const Point& aj = inst.anchor(*j);
      Point y = aj + t * dir;
      double dec = objective_decrease(inst, aj, y);
      while (!(dec > 0.0) && t > kSnapRelTol * (1.0 + aj.norm())) {
        t *= 0.5;
        y = aj + t * dir;
        dec = objective_decrease(inst, aj, y);
      }
      ++iter;
      record(iter, y, (y - x).norm(), objective_decrease(inst, x, y), *j, StepKind::nudge);
      x = y;
      continue;
    }

    // One pass over the anchors gives F(x), grad phi(x) and the nearest anchor.
    Point num = Point::Zero(as_index(inst.dim()));
    Point grad = Point::Zero(as_index(inst.dim()));
    double denom = 0.0;
    std::size_t nearest = 0;
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const Point d = x - inst.anchor(i);
      const double dist = d.norm();
      const double c = inst.weight(i) / dist;
      num += c * inst.anchor(i);
      grad += c * d;
      denom += c;
      if (dist < nearest_dist) {
        nearest_dist = dist;
        nearest = i;
      }
    }

    // An anchor passing the resultant test is the global minimizer; take it
    // as soon as the iterate heads its way instead of crawling in.
    if (vertex_report(nearest).optimal) {
      const Point& an = inst.anchor(nearest);
      const double dec = objective_decrease(inst, x, an);
      if (dec > 0.0) {
        ++iter;
        record(iter, an, (an - x).norm(), dec, nearest, StepKind::vertex_jump);
        x = an;
        sol.status = Status::converged;
        break;
      }
    }

    const Point next = num / denom;
    const double step = (next - x).norm();
    const bool certified = grad.norm() <= cfg.cert_tol;
    if (certified && step <= cfg.step_tol * (1.0 + x.norm())) {
      sol.status = Status::converged;
      break;
    }
    if (step == 0.0) break;  // exact fixed point without a certificate: nothing left to do

    ++iter;
    record(iter, next, step, objective_decrease(inst, x, next), snapped_anchor(inst, next),
           StepKind::weiszfeld);
    x = next;
  }

  sol.point = x;
  sol.value = objective(inst, x);
  sol.certificate = subdiff::certify(inst, x, cfg.cert_tol);
  sol.iterations = iter;
  return out;
}

}  // namespace fermat::weiszfeld

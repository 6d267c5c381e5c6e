#include "fermat/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fermat/errors.hpp"

namespace fermat::subdiff {

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::interior:
      return "interior";
    case CertificateKind::vertex:
      return "vertex";
  }
  return "unknown";
}

VertexReport resultant(const Instance& inst, std::size_t k, double cert_tol) {
  if (k >= inst.size())
    throw InvalidArgument("anchor index " + std::to_string(k) + " out of range [0, " +
                          std::to_string(inst.size()) + ")");
  const Point& ak = inst.anchor(k);
  VertexReport report;
  report.index = k;
  report.weight = inst.weight(k);
  report.resultant = Point::Zero(static_cast<Eigen::Index>(inst.dim()));
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i == k) continue;
    const Point d = inst.anchor(i) - ak;
    report.resultant += inst.weight(i) * d / d.norm();
  }
  report.resultant_norm = report.resultant.norm();
  report.optimal = report.resultant_norm <= report.weight + cert_tol;
  return report;
}

Certificate certify(const Instance& inst, const Point& x, double cert_tol) {
  if (!(cert_tol > 0.0)) throw InvalidArgument("cert_tol must be positive");
  check_point(inst, x);
  Certificate cert;
  cert.location = x;
  if (auto k = snapped_anchor(inst, x)) {
    const VertexReport r = resultant(inst, *k, cert_tol);
    cert.kind = CertificateKind::vertex;
    cert.vertex_index = *k;
    cert.residual = std::max(0.0, r.resultant_norm - r.weight);
    return cert;
  }
  cert.kind = CertificateKind::interior;
  cert.residual = gradient(inst, x).norm();
  return cert;
}

ThreePointCheck three_point_conditions(const Instance& inst, const Point& x, double angle_tol) {
  if (inst.size() != 3)
    throw InvalidArgument("three-point conditions need exactly 3 distinct anchors, got " +
                          std::to_string(inst.size()));
  if (!inst.uniform_weights())
    throw UnsupportedError("three-point angle conditions are only defined for equal weights");
  check_point(inst, x);

  ThreePointCheck out;
  const auto unit_from = [&](std::size_t i) {
    const Point d = x - inst.anchor(i);
    return Point(d / d.norm());
  };

  if (auto k = snapped_anchor(inst, x)) {
    out.kind = CertificateKind::vertex;
    out.vertex_index = *k;
    const std::size_t i = (*k + 1) % 3;
    const std::size_t j = (*k + 2) % 3;
    // Directions from the other anchors toward x = a_k.
    const Point vi = (inst.anchor(*k) - inst.anchor(i)).normalized();
    const Point vj = (inst.anchor(*k) - inst.anchor(j)).normalized();
    out.directions.v = {vi, vj};
    out.cosines = {vi.dot(vj)};
    out.satisfied = out.cosines[0] <= -0.5 + angle_tol;
    return out;
  }

  out.kind = CertificateKind::interior;
  out.directions.v = {unit_from(0), unit_from(1), unit_from(2)};
  const auto& v = out.directions.v;
  out.cosines = {v[0].dot(v[1]), v[1].dot(v[2]), v[2].dot(v[0])};
  out.satisfied = std::all_of(out.cosines.begin(), out.cosines.end(),
                              [&](double c) { return std::abs(c + 0.5) <= angle_tol; });
  return out;
}

}  // namespace fermat::subdiff

#pragma once

#include <cstddef>
#include <vector>

#include "fermat/core.hpp"

namespace fermat::subdiff {

inline constexpr double kDefaultCertTol = 1e-8;
inline constexpr double kDefaultAngleTol = 1e-7;

/// Optimality test at anchor k: R_k = sum_{i != k} w_i (a_i - a_k) / ||a_i - a_k||.
/// The subdifferential of phi at a_k is -R_k + w_k * B, so a_k is optimal
/// iff ||R_k|| <= w_k. The boundary ||R_k|| == w_k counts as optimal.
struct VertexReport {
  std::size_t index = 0;
  Point resultant;
  double resultant_norm = 0.0;
  double weight = 0.0;
  bool optimal = false;
};

VertexReport resultant(const Instance& inst, std::size_t k,
                       double cert_tol = kDefaultCertTol);

enum class CertificateKind { interior, vertex };

const char* to_string(CertificateKind kind);

/// Residual <= cert_tol certifies `location` as a minimizer.
///   interior: residual = ||grad phi(location)||
///   vertex:   residual = max(0, ||R_k|| - w_k)
struct Certificate {
  CertificateKind kind = CertificateKind::interior;
  double residual = 0.0;
  Point location;
  std::size_t vertex_index = 0;  // meaningful only for kind == vertex
};

Certificate certify(const Instance& inst, const Point& x, double cert_tol = kDefaultCertTol);

/// Unit vectors v_i = (x - a_i) / ||x - a_i|| for the anchors x is not at.
struct UnitDirections {
  std::vector<Point> v;
};

/// Angle test for the unweighted three-anchor problem.
///
/// Off the anchors, x is optimal iff the three pairwise cosines of v_1, v_2,
/// v_3 all equal -1/2. At anchor a_k, it is optimal iff the cosine between the
/// two directions coming from the other anchors is <= -1/2.
struct ThreePointCheck {
  CertificateKind kind = CertificateKind::interior;
  bool satisfied = false;
  // interior: cos(v1,v2), cos(v2,v3), cos(v3,v1). vertex: the single cosine.
  std::vector<double> cosines;
  std::size_t vertex_index = 0;
  UnitDirections directions;
};

ThreePointCheck three_point_conditions(const Instance& inst, const Point& x,
                                       double angle_tol = kDefaultAngleTol);

}  // namespace fermat::subdiff

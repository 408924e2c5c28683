// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/conic/builders.hpp"

#include <cmath>
#include <stdexcept>

namespace secran::conic {

HermExpr lmi_2x2(const LinExpr& a, const LinExpr& b, const LinExpr& c) {
  HermExpr m(2);
  m.add_entry(0, 0, CxAffine(a));
  m.add_entry(0, 1, CxAffine(b));
  m.add_entry(1, 1, CxAffine(c));
  return m;
}

HermExpr quad_upper_3x3(const LinExpr& t, double s1, const LinExpr& u, double s2,
                        const LinExpr& v) {
  HermExpr m(3);
  m.add_entry(0, 0, CxAffine(t));
  m.add_entry(0, 1, CxAffine(s1 * u));
  m.add_entry(0, 2, CxAffine(s2 * v));
  m.add_entry(1, 1, CxAffine(LinExpr(1.0)));
  m.add_entry(2, 2, CxAffine(LinExpr(1.0)));
  return m;
}

HermExpr sproc_lmi(const LinExpr& weight, const HermExpr& q, const std::vector<CxAffine>& b_row,
                   const LinExpr& c, double sigma, const Eigen::RowVectorXcd& h_est,
                   SprocForm form) {
  if (sigma < 0.0) throw std::invalid_argument("sproc_lmi: sigma >= 0 required");
  const int p = q.dim();
  if (static_cast<int>(b_row.size()) != p)
    throw std::invalid_argument("sproc_lmi: b_row length mismatch");
  const double sign = (form == SprocForm::UpperBound) ? -1.0 : 1.0;
  HermExpr m(p + 1);
  // (1,1) block: w*I +/- Q.
  m.add_constant_block(0, sign * q.constant());
  for (const auto& [v, cf] : q.coeffs()) m.add_term_block(0, v, sign * cf);
  for (int i = 0; i < p; ++i) m.add_entry(i, i, CxAffine(weight));
  // Border: +/- b^H in the last column.
  for (int i = 0; i < p; ++i) m.add_entry(i, p, sign * CxAffine(b_row[static_cast<std::size_t>(i)]));
  // Corner: c - w*sigma*||h_est||^2.
  LinExpr corner = c;
  corner += (-sigma * h_est.squaredNorm()) * weight;
  m.add_entry(p, p, CxAffine(corner));
  return m;
}

namespace {

struct BallSetup {
  Eigen::VectorXd d;   // eigenvalues of A (ascending)
  Eigen::VectorXcd g;  // U^H h^H
  double rho2 = 0.0;   // sigma * ||h||^2
};

BallSetup setup(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& a, double sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  BallSetup s;
  s.d = es.eigenvalues();
  s.g = es.eigenvectors().adjoint() * h.adjoint();
  s.rho2 = sigma * h.squaredNorm();
  return s;
}

}  // namespace

BallExtremum worst_case_quadratic_max(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& a,
                                      double sigma) {
  BallSetup s = setup(h, a, sigma);
  const int n = static_cast<int>(s.d.size());
  const double dmax = std::max(s.d.maxCoeff(), 0.0);
  auto value_at = [&](double lam) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = lam / (lam - s.d(i));
      v += s.d(i) * r * r * std::norm(s.g(i));
    }
    return v;
  };
  if (s.rho2 == 0.0) return {value_at(std::max(1.0, 2.0 * dmax) * 1e8), 0.0};
  auto norm2_at = [&](double lam) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = s.d(i) / (lam - s.d(i));
      v += r * r * std::norm(s.g(i));
    }
    return v;
  };
  const double eps = 1e-12 * std::max(dmax, 1e-30) + 1e-300;
  double lo = dmax + eps;
  if (norm2_at(lo) <= s.rho2) {
    // Hard case: top eigenspace orthogonal to A h^H; pad along it.
    const double extra2 = s.rho2 - norm2_at(lo);
    // Moving distance sqrt(extra2) along the top eigenvector adds
    // dmax*extra2 to the quadratic (no cross term in the hard case).
    return {value_at(lo) + dmax * extra2, dmax};
  }
  double hi = std::max(2.0 * dmax, 1.0);
  while (norm2_at(hi) > s.rho2) hi *= 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (norm2_at(mid) > s.rho2)
      lo = mid;
    else
      hi = mid;
  }
  const double lam = 0.5 * (lo + hi);
  return {value_at(lam), lam};
}

BallExtremum worst_case_quadratic_min(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& a,
                                      double sigma) {
  BallSetup s = setup(h, a, sigma);
  const int n = static_cast<int>(s.d.size());
  auto value_at = [&](double nu) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double di = std::max(s.d(i), 0.0);
      const double r = nu / (di + nu);
      v += di * r * r * std::norm(s.g(i));
    }
    return v;
  };
  if (s.rho2 == 0.0) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += std::max(s.d(i), 0.0) * std::norm(s.g(i));
    return {v, 0.0};
  }
  auto norm2_at = [&](double nu) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double di = std::max(s.d(i), 0.0);
      const double r = (di + nu) > 0 ? di / (di + nu) : 0.0;
      v += r * r * std::norm(s.g(i));
    }
    return v;
  };
  if (norm2_at(0.0) <= s.rho2) return {0.0, 0.0};  // null space reachable
  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * s.d.maxCoeff());
  while (norm2_at(hi) > s.rho2) hi *= 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (norm2_at(mid) > s.rho2)
      lo = mid;
    else
      hi = mid;
  }
  const double nu = 0.5 * (lo + hi);
  return {value_at(nu), nu};
}

}  // namespace secran::conic

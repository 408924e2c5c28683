// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/rankrec.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace secran::rankrec {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

int numerical_rank(const MatrixXcd& x, double ratio_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(x, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -ratio_tol * std::max(top, 1.0))
    throw std::invalid_argument("numerical_rank: matrix not PSD within tolerance");
  if (top <= 0.0) return 0;
  int count = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) >= ratio_tol * top) ++count;
  return count;
}

Eigen::VectorXcd principal_vector(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  const int last = static_cast<int>(es.eigenvalues().size()) - 1;
  const double lam = std::max(es.eigenvalues()(last), 0.0);
  return std::sqrt(lam) * es.eigenvectors().col(last);
}

std::vector<int> detect_active_set(const srm::ScaledData& d, const MatrixXcd& v0, double omega,
                                   double rel_tol) {
  const double threshold = std::expm1(omega / d.eta);
  std::vector<int> active;
  for (int l = 0; l < d.n_bs; ++l) {
    const double tr = (d.g[static_cast<std::size_t>(l)] * v0 *
                       d.g[static_cast<std::size_t>(l)].adjoint())(0, 0)
                          .real();
    if (tr <= threshold * (1.0 + rel_tol)) active.push_back(l);
  }
  if (active.empty()) {
    // The binding BS is the one at the minimum rate.
    int arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < d.n_bs; ++l) {
      const double tr = (d.g[static_cast<std::size_t>(l)] * v0 *
                         d.g[static_cast<std::size_t>(l)].adjoint())(0, 0)
                            .real();
      if (tr < best) {
        best = tr;
        arg = l;
      }
    }
    active.push_back(arg);
  }
  return active;
}

namespace {

// Factor V0 = X X^H over its numerically nonzero eigenspace.
MatrixXcd psd_factor(const MatrixXcd& v0, double ratio_tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(v0);
  const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > ratio_tol * top) keep.push_back(i);
  MatrixXcd x(v0.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    x.col(static_cast<Eigen::Index>(j)) =
        std::sqrt(es.eigenvalues()(keep[j])) * es.eigenvectors().col(keep[j]);
  return x;
}

// Hermitian basis of r x r matrices, r^2 elements (same layout as MatVar).
MatrixXcd herm_basis(int r, int p) {
  MatrixXcd b = MatrixXcd::Zero(r, r);
  if (p < r) {
    b(p, p) = 1.0;
    return b;
  }
  int q = p - r;
  const int pair = q / 2;
  const bool imag_part = (q % 2) == 1;
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx)
      if (idx == pair) {
        if (imag_part) {
          b(i, j) = std::complex<double>(0, 1);
          b(j, i) = std::complex<double>(0, -1);
        } else {
          b(i, j) = 1.0;
          b(j, i) = 1.0;
        }
        return b;
      }
  throw std::out_of_range("herm_basis");
}

}  // namespace

ReduceResult reduce_rank_v0(const MatrixXcd& v0, const std::vector<MatrixXcd>& g_outer,
                            const std::vector<int>& active_set,
                            const std::vector<double>& thresholds) {
  ReduceResult res;
  res.v0 = 0.5 * (v0 + v0.adjoint());
  const int n_active = static_cast<int>(active_set.size());

  for (int pass = 0; pass < 64; ++pass) {
    MatrixXcd x = psd_factor(res.v0);
    const int r = static_cast<int>(x.cols());
    if (r * r <= n_active || r <= 1) break;

    // Real linear system Tr(X^H G_l X Gamma) = 0 over Hermitian Gamma
    // (r^2 real unknowns, |active| equations).
    Eigen::MatrixXd a(n_active, r * r);
    for (int e = 0; e < n_active; ++e) {
      const MatrixXcd m = x.adjoint() * g_outer[static_cast<std::size_t>(active_set[static_cast<std::size_t>(e)])] * x;
      for (int p = 0; p < r * r; ++p)
        a(e, p) = (m * herm_basis(r, p)).trace().real();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    // Smallest-singular-direction null vector (deterministic).
    const Eigen::VectorXd gvec = svd.matrixV().col(r * r - 1);
    if (n_active > 0) {
      const double resid = (a * gvec).cwiseAbs().maxCoeff();
      if (resid > 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff()))
        throw std::runtime_error("reduce_rank_v0: no nonzero null solution found");
    }
    MatrixXcd gamma = MatrixXcd::Zero(r, r);
    for (int p = 0; p < r * r; ++p) gamma += gvec(p) * herm_basis(r, p);

    // Orient so the trace never increases.
    if ((x.adjoint() * x * gamma).trace().real() < 0.0) gamma = -gamma;

    Eigen::SelfAdjointEigenSolver<MatrixXcd> ge(gamma, Eigen::EigenvaluesOnly);
    const double rho = ge.eigenvalues().cwiseAbs().maxCoeff();
    if (!(rho > 0.0)) throw std::runtime_error("reduce_rank_v0: null solution vanished");

    auto candidate = [&](const MatrixXcd& gm) {
      MatrixXcd v = x * (MatrixXcd::Identity(r, r) - gm / rho) * x.adjoint();
      return MatrixXcd(0.5 * (v + v.adjoint()));
    };
    auto inactive_ok = [&](const MatrixXcd& v) {
      for (std::size_t l = 0; l < g_outer.size(); ++l) {
        bool is_active = false;
        for (int e : active_set)
          if (e == static_cast<int>(l)) is_active = true;
        if (is_active) continue;
        const double tr = (g_outer[l] * v).trace().real();
        if (tr < thresholds[l] * (1.0 - 1e-9) - 1e-12) return false;
      }
      return true;
    };

    MatrixXcd next = candidate(gamma);
    if (!inactive_ok(next)) {
      MatrixXcd alt = candidate(-gamma);
      if (inactive_ok(alt)) {
        next = alt;  // trace may grow; feasibility of inactive rows first
      } else {
        res.stalled = true;
        break;
      }
    }
    res.v0 = next;
    ++res.passes;
  }
  return res;
}

MatrixXcd build_y_matrix(const srm::DualInfo& duals, const srm::ScaledData& d, int k) {
  const int l_count = d.n_bs;
  MatrixXcd y = MatrixXcd::Zero(l_count, l_count);
  if (duals.variant == srm::Variant::PerBsPower) {
    for (int l = 0; l < l_count; ++l) y(l, l) += duals.psi1_per_bs(l);
  } else {
    y += duals.psi1 * MatrixXcd::Identity(l_count, l_count);
  }
  for (int i = 0; i < d.n_users; ++i)
    if (i != k)
      y += (duals.psi3(i) - duals.psi8(i)) * d.hbar_outer[static_cast<std::size_t>(i)];
  y += duals.psi7(k) * d.hbar_outer[static_cast<std::size_t>(k)];
  if (duals.variant == srm::Variant::Robust) {
    const int ml = d.m_ant * l_count;
    for (int z = 0; z < d.n_eves; ++z) {
      MatrixXcd hz(ml + 1, ml);
      hz.topRows(ml) = MatrixXcd::Identity(ml, ml);
      hz.bottomRows(1) = d.he_full[static_cast<std::size_t>(z)];
      MatrixXcd inner =
          hz.adjoint() * duals.t1[static_cast<std::size_t>(k)][static_cast<std::size_t>(z)] * hz;
      for (int i = 0; i < d.n_users; ++i)
        if (i != k)
          inner -= hz.adjoint() *
                   duals.t2[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)] * hz;
      y += d.f_dense.adjoint() * inner * d.f_dense;
    }
  } else {
    for (int z = 0; z < d.n_eves; ++z) {
      double w = duals.psi5(k, z);
      for (int i = 0; i < d.n_users; ++i)
        if (i != k) w -= duals.psi6(i, z);
      y += w * d.hebar_outer[static_cast<std::size_t>(z)];
    }
  }
  return MatrixXcd(0.5 * (y + y.adjoint()));
}

ReconstructResult reconstruct_vk(const srm::ScaledPoint& point, const srm::DualInfo& duals,
                                 const srm::ScaledData& d, double cert_tol) {
  ReconstructResult res;
  res.point = point;
  res.transformed.assign(static_cast<std::size_t>(d.n_users), false);
  for (int k = 0; k < d.n_users; ++k) {
    auto& vk = res.point.vk[static_cast<std::size_t>(k)];
    if (numerical_rank(vk, 1e-6) <= 1) continue;

    // Dual certificate: null(Y_k) must be orthogonal to the user channel.
    const MatrixXcd y = build_y_matrix(duals, d, k);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(y);
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    double cert = 0.0;
    const auto& h = d.hbar[static_cast<std::size_t>(k)];
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > 1e-7 * top) continue;
      cert = std::max(cert, std::abs((h * es.eigenvectors().col(i))(0, 0)) / h.norm());
    }
    res.max_cert_residual = std::max(res.max_cert_residual, cert);
    if (cert > cert_tol)
      throw std::runtime_error("reconstruct_vk: dual certificate inconsistent (h*null(Y) = " +
                               std::to_string(cert) + ")");

    // V_hat = (V h^H)(h V)/(h V h^H): keeps the user's signal power and all
    // summed traces exactly; the PSD remainder moves into the AN covariance.
    const VectorXcd w = vk * h.adjoint();
    const double sig = (h * vk * h.adjoint())(0, 0).real();
    if (sig <= 0.0) continue;
    const MatrixXcd v_hat = (w * w.adjoint()) / sig;
    res.point.lambda += vk - v_hat;
    res.point.lambda = 0.5 * (res.point.lambda + res.point.lambda.adjoint());
    vk = v_hat;
    res.transformed[static_cast<std::size_t>(k)] = true;
  }
  return res;
}

RandomizeResult randomize_v0(const srm::ScaledPoint& relaxed, const srm::ScaledData& d,
                             srm::Variant variant, int n_candidates, Rng& rng,
                             const srm::SrmOptions& opts) {
  if (n_candidates < 1) throw std::invalid_argument("randomize_v0: n_candidates >= 1");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(relaxed.v0);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const MatrixXcd xd = es.eigenvectors() * ev.cwiseSqrt().asDiagonal();

  srm::FixedDirections dirs;
  dirs.vk.resize(relaxed.vk.size());
  for (std::size_t k = 0; k < relaxed.vk.size(); ++k)
    dirs.vk[k] = principal_vector(relaxed.vk[k]);

  RandomizeResult best;
  best.secrecy_nats = -1.0;
  bool any = false;
  for (int c = 0; c < n_candidates; ++c) {
    VectorXcd s(relaxed.v0.rows());
    for (int i = 0; i < s.size(); ++i) s(i) = rng.cnormal();
    dirs.v0 = xd * s;
    if (dirs.v0.norm() <= 0.0) continue;
    try {
      srm::SrmResult re = srm::solve_srm_scaled(variant, d, opts, &dirs);
      const double sec = srm::true_secrecy_nats(d, re.point);
      if (!any || sec > best.secrecy_nats) {
        any = true;
        best.secrecy_nats = sec;
        best.point = re.point;
        best.v0 = dirs.v0 * std::sqrt(std::max(re.point.v0.trace().real(), 0.0) /
                                      std::max(dirs.v0.squaredNorm(), 1e-300));
        best.best_candidate = c;
      }
    } catch (const std::exception&) {
      continue;  // infeasible candidate, recorded by omission
    }
  }
  if (!any) throw std::runtime_error("randomize_v0: all candidates infeasible");
  return best;
}

RecoveredSolution recover_rank_one(const srm::SrmResult& res, srm::Variant variant, Rng& rng,
                                   int n_candidates, const srm::SrmOptions& opts) {
  const srm::ScaledData& d = res.data;
  RecoveredSolution out;
  out.report.rank_v0_before = numerical_rank(res.point.v0, 1e-6);
  out.report.rank_vk_before.resize(res.point.vk.size());
  for (std::size_t k = 0; k < res.point.vk.size(); ++k)
    out.report.rank_vk_before[k] = numerical_rank(res.point.vk[k], 1e-6);
  out.report.objective_before_bits = d.to_bits(srm::true_secrecy_nats(d, res.point));

  srm::ScaledPoint cur = res.point;
  out.report.vk_path.assign(res.point.vk.size(), "none");
  bool any_vk = false;
  for (std::size_t k = 0; k < res.point.vk.size(); ++k)
    if (out.report.rank_vk_before[k] > 1) any_vk = true;
  if (any_vk) {
    ReconstructResult rec = reconstruct_vk(cur, res.duals, d);
    cur = rec.point;
    for (std::size_t k = 0; k < rec.transformed.size(); ++k)
      if (rec.transformed[k]) out.report.vk_path[k] = "reconstruction";
  }

  out.report.v0_path = "none";
  if (numerical_rank(cur.v0, 1e-6) > 1) {
    const auto active = detect_active_set(d, cur.v0, res.aux.omega);
    std::vector<double> thresholds(static_cast<std::size_t>(d.n_bs),
                                   std::expm1(res.aux.omega / d.eta));
    ReduceResult red = reduce_rank_v0(cur.v0, d.g_outer, active, thresholds);
    if (!red.stalled && numerical_rank(red.v0, 1e-6) <= 1) {
      cur.v0 = red.v0;
      out.report.v0_path = "reduction";
    } else {
      RandomizeResult rnd = randomize_v0(cur, d, variant, n_candidates, rng, opts);
      cur = rnd.point;
      out.report.v0_path = "randomization";
    }
  }

  out.report.rank_v0_after = numerical_rank(cur.v0, 1e-6);
  out.report.rank_vk_after.resize(cur.vk.size());
  for (std::size_t k = 0; k < cur.vk.size(); ++k)
    out.report.rank_vk_after[k] = numerical_rank(cur.vk[k], 1e-6);
  out.report.objective_after_bits = d.to_bits(srm::true_secrecy_nats(d, cur));
  out.report.max_residual = srm::original_violation(d, cur);

  out.point = cur;
  out.solution = srm::to_physical(d, cur);
  out.solution.v0 = std::sqrt(d.p_cp_scale) * principal_vector(cur.v0);
  out.solution.vk.resize(cur.vk.size());
  for (std::size_t k = 0; k < cur.vk.size(); ++k)
    out.solution.vk[k] = std::sqrt(d.p_bs_scale) * principal_vector(cur.vk[k]);
  return out;
}

}  // namespace secran::rankrec

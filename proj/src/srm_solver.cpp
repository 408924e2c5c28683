// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/srm/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace secran::srm {

namespace {

// Minimal zeta_hat admitting the upper S-procedure LMI at slack weight w:
// zeta_min(w) = w*sigma*||h||^2 + h A h^H + (hA)(wI - A)^{-1}(hA)^H.
double sproc_min_zeta(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& a, double sigma,
                      double w) {
  const int n = static_cast<int>(h.size());
  const Eigen::MatrixXcd m = w * Eigen::MatrixXcd::Identity(n, n) - a;
  const Eigen::VectorXcd b = (h * a).adjoint();
  const Eigen::VectorXcd x = m.ldlt().solve(b);
  return w * sigma * h.squaredNorm() + (h * a * h.adjoint())(0, 0).real() +
         (b.adjoint() * x)(0, 0).real();
}

// Largest chi admitted by the lower S-procedure LMI at slack weight w:
// chi_max(w) = -w*sigma*||h||^2 + h Q h^H + noise - (hQ)(wI + Q)^{-1}(hQ)^H.
double sproc_max_chi(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& q, double sigma,
                     double w, double noise) {
  const int n = static_cast<int>(h.size());
  const Eigen::MatrixXcd m = w * Eigen::MatrixXcd::Identity(n, n) + q;
  const Eigen::VectorXcd b = (h * q).adjoint();
  const Eigen::VectorXcd x = m.ldlt().solve(b);
  return -w * sigma * h.squaredNorm() + (h * q * h.adjoint())(0, 0).real() + noise -
         (b.adjoint() * x)(0, 0).real();
}

}  // namespace

std::pair<ScaledPoint, AuxState> init_aux(const ScaledData& d, const FixedDirections* fixed) {
  const int k_count = d.n_users;
  const int z_count = d.n_eves;
  const int l_count = d.n_bs;

  for (int k = 0; k < k_count; ++k)
    if (d.hbar[static_cast<std::size_t>(k)].norm() <= 0.0)
      throw std::invalid_argument("init_aux: zero effective channel for user " +
                                  std::to_string(k));
  double max_g = 0.0;
  for (int l = 0; l < l_count; ++l) max_g = std::max(max_g, d.g[static_cast<std::size_t>(l)].norm());
  if (max_g <= 0.0) throw std::invalid_argument("init_aux: zero fronthaul channels");

  ScaledPoint p;
  // Multicast seed: isotropic at full CP budget.
  if (fixed) {
    const double n2 = fixed->v0.squaredNorm();
    if (n2 <= 0.0) throw std::invalid_argument("init_aux: zero multicast direction");
    p.v0 = (d.cp_budget / n2) * (fixed->v0 * fixed->v0.adjoint());
  } else {
    p.v0 = (d.cp_budget / d.n_cp) *
           Eigen::MatrixXcd::Identity(d.n_cp, d.n_cp);
  }

  // Digital seed: MRT per user at 90% of the budget, isotropic AN at 10%.
  std::vector<Eigen::MatrixXcd> mrt(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    if (fixed) {
      const auto& v = fixed->vk[static_cast<std::size_t>(k)];
      if (v.squaredNorm() <= 0.0)
        throw std::invalid_argument("init_aux: zero digital direction");
      mrt[static_cast<std::size_t>(k)] = (v * v.adjoint()) / v.squaredNorm();
    } else {
      const auto& h = d.hbar[static_cast<std::size_t>(k)];
      mrt[static_cast<std::size_t>(k)] = (h.adjoint() * h) / h.squaredNorm();
    }
  }
  const bool per_bs = d.power_mode == PowerConstraintSpec::Mode::PerBs;
  Eigen::VectorXd pk = Eigen::VectorXd::Constant(k_count, 0.9 * d.bs_total_budget / k_count);
  p.lambda = (0.1 * d.bs_total_budget / l_count) *
             Eigen::MatrixXcd::Identity(l_count, l_count);
  if (per_bs) {
    p.lambda = Eigen::MatrixXcd::Zero(l_count, l_count);
    for (int l = 0; l < l_count; ++l)
      p.lambda(l, l) = 0.1 * d.bs_per_budget[static_cast<std::size_t>(l)];
    // Scale the MRT powers so every per-BS budget holds.
    double shrink = 1.0;
    for (int l = 0; l < l_count; ++l) {
      double load = 0.0;
      for (int k = 0; k < k_count; ++k)
        load += pk(k) * mrt[static_cast<std::size_t>(k)](l, l).real();
      const double room = 0.9 * d.bs_per_budget[static_cast<std::size_t>(l)];
      if (load > room) shrink = std::min(shrink, room / load);
    }
    pk *= shrink;
  }
  p.vk.resize(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k)
    p.vk[static_cast<std::size_t>(k)] = pk(k) * mrt[static_cast<std::size_t>(k)];

  // Fronthaul admission: scale access powers until the cap holds.
  const double omega_cap = min_fronthaul_rate_nats(d, p);
  if (!(omega_cap > 0.0)) throw std::invalid_argument("init_aux: fronthaul rate is zero");
  if (sum_access_nats(d, p) > omega_cap * (1.0 - 1e-9)) {
    double lo = 0.0, hi = 1.0;
    ScaledPoint trial = p;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      for (int k = 0; k < k_count; ++k)
        trial.vk[static_cast<std::size_t>(k)] = mid * p.vk[static_cast<std::size_t>(k)];
      if (sum_access_nats(d, trial) > omega_cap * (1.0 - 1e-9))
        hi = mid;
      else
        lo = mid;
    }
    for (int k = 0; k < k_count; ++k) p.vk[static_cast<std::size_t>(k)] *= lo;
    if (lo <= 0.0) throw std::invalid_argument("init_aux: cannot admit any access power");
  }

  AuxState a;
  a.beta.resize(k_count);
  a.eps.resize(k_count);
  a.tau.resize(k_count);
  a.theta.resize(k_count);
  a.lambda.resize(k_count);
  a.gamma = Eigen::MatrixXd::Zero(k_count, std::max(z_count, 1));
  a.zeta = a.gamma;
  a.mu = a.gamma;
  a.gamma_hat = a.gamma;
  a.zeta_hat = a.gamma;
  a.mu_hat = a.gamma;
  a.chi = a.gamma;
  a.kappa = Eigen::VectorXd::Zero(std::max(z_count, 1));
  a.upsilon = a.kappa;

  for (int k = 0; k < k_count; ++k) {
    a.beta(k) = user_sinr(d, p, k);
    a.eps(k) = user_denominator(d, p, k);
    if (!(a.beta(k) > 0.0))
      throw std::invalid_argument("init_aux: seed SINR vanished for user " + std::to_string(k));
    a.tau(k) = a.beta(k);
    a.theta(k) = a.tau(k) * (user_denominator(d, p, k) - d.noise);
    a.lambda(k) = std::sqrt(std::max(a.theta(k), 0.0));
    for (int z = 0; z < z_count; ++z) {
      a.gamma(k, z) = eve_sinr(d, p, k, z);
      a.zeta(k, z) = a.gamma(k, z) * (eve_denominator(d, p, k, z) - d.noise);
      a.mu(k, z) = std::sqrt(std::max(a.zeta(k, z), 0.0));
    }
  }
  a.omega = omega_cap;

  if (d.robust && z_count > 0) {
    const Eigen::MatrixXcd f = d.f_dense;
    for (int z = 0; z < z_count; ++z) {
      const auto zu = static_cast<std::size_t>(z);
      const auto& he = d.he_full[zu];
      const double sigma_z = d.sigma[zu];
      // Shared kappa_z: largest per-user trust-region multiplier plus margin.
      double kap = 0.0;
      std::vector<Eigen::MatrixXcd> fvf(static_cast<std::size_t>(k_count));
      for (int k = 0; k < k_count; ++k) {
        fvf[static_cast<std::size_t>(k)] =
            f * p.vk[static_cast<std::size_t>(k)] * f.adjoint();
        const auto wc = conic::worst_case_quadratic_max(he, fvf[static_cast<std::size_t>(k)],
                                                        sigma_z);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fvf[static_cast<std::size_t>(k)],
                                                           Eigen::EigenvaluesOnly);
        kap = std::max(kap, std::max(wc.multiplier, es.eigenvalues().maxCoeff()));
      }
      kap = kap * (1.0 + 1e-6) + 1e-9;
      a.kappa(z) = kap;
      for (int k = 0; k < k_count; ++k) {
        const double zmin =
            sproc_min_zeta(he, fvf[static_cast<std::size_t>(k)], sigma_z, kap);
        a.zeta_hat(k, z) = zmin * (1.0 + 1e-9) + 1e-12;
        a.mu_hat(k, z) = std::sqrt(a.zeta_hat(k, z));
      }
      // Shared upsilon_z: golden search maximizing the smallest admitted chi.
      std::vector<Eigen::MatrixXcd> q(static_cast<std::size_t>(k_count));
      double ups_hint = 0.0;
      for (int k = 0; k < k_count; ++k) {
        Eigen::MatrixXcd qk = f * p.lambda * f.adjoint();
        for (int i = 0; i < k_count; ++i)
          if (i != k) qk += fvf[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(k)] = qk;
        ups_hint = std::max(ups_hint,
                            conic::worst_case_quadratic_min(he, qk, sigma_z).multiplier);
      }
      auto min_chi = [&](double w) {
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < k_count; ++k)
          worst = std::min(worst, sproc_max_chi(he, q[static_cast<std::size_t>(k)], sigma_z, w,
                                                d.noise));
        return worst;
      };
      double lo = 0.0, hi = std::max(2.0 * ups_hint, 1e-6);
      for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (min_chi(m1) < min_chi(m2))
          lo = m1;
        else
          hi = m2;
      }
      const double ups = 0.5 * (lo + hi);
      a.upsilon(z) = ups;
      for (int k = 0; k < k_count; ++k) {
        const double cmax = sproc_max_chi(he, q[static_cast<std::size_t>(k)], sigma_z, ups,
                                          d.noise);
        a.chi(k, z) = std::max(cmax * (1.0 - 1e-9) - 1e-12, 1e-12);
        a.gamma_hat(k, z) = a.zeta_hat(k, z) / a.chi(k, z);
      }
    }
  }
  return {p, a};
}

SrmResult solve_srm_scaled(Variant variant, const ScaledData& d, const SrmOptions& opts,
                           const FixedDirections* fixed) {
  SrmResult res;
  res.data = d;
  auto [point, aux] = init_aux(d, fixed);
  CutPools pools = CutPools::init(d, opts.n_beta_cuts, opts.n_fh_cuts);

  double prev_surr = -std::numeric_limits<double>::infinity();
  Subproblem sp;
  conic::Solution sol;
  res.trace.termination = "max_iterations";

  for (int n = 1; n <= opts.t_max; ++n) {
    int refinements = 0;
    ScaledPoint cand;
    AuxState cand_aux;
    for (;; ++refinements) {
      sp = build_subproblem(variant, d, aux, pools, fixed);
      sol = sp.problem.solve(opts.conic);
      if (sol.status != conic::SolveStatus::Optimal) {
        std::ostringstream os;
        os << "srm subproblem failed at iteration " << n << " (status "
           << conic::to_string(sol.status) << ", pres " << sol.stats.primal_res << ", dres "
           << sol.stats.dual_res << ", gap " << sol.stats.rel_gap << ")";
        throw std::runtime_error(os.str());
      }
      cand = extract_point(sp, sol);
      cand_aux = extract_aux(sp, sol, d);

      // Tangent refinement: the epigraph scalars must not overshoot the
      // true logs by more than cut_tol.
      double worst = 0.0;
      std::vector<std::pair<int, double>> new_beta, new_fh;
      for (int k = 0; k < d.n_users; ++k) {
        const double b = std::max(sol.y(sp.beta[static_cast<std::size_t>(k)]), 0.0);
        const double gap = sol.y(sp.r_epi[static_cast<std::size_t>(k)]) - std::log1p(b);
        if (gap > opts.cut_tol) new_beta.emplace_back(k, b);
        worst = std::max(worst, gap);
      }
      const double omega_v = sol.y(sp.omega);
      for (int l = 0; l < d.n_bs; ++l) {
        const double u = fronthaul_snr(d, cand, l);
        const double gap = omega_v - d.eta * std::log1p(u);
        if (gap > opts.cut_tol) new_fh.emplace_back(l, u);
        worst = std::max(worst, gap);
      }
      if ((new_beta.empty() && new_fh.empty()) || refinements >= opts.max_refinements) break;
      for (const auto& [k, b] : new_beta) pools.add_beta(k, b);
      for (const auto& [l, u] : new_fh) pools.add_fh(l, u);
    }

    point = cand;
    aux = cand_aux;
    const double surr = sol.objective;  // nats per W_mm

    IterationRecord rec;
    rec.iteration = n;
    rec.surrogate_bits = d.to_bits(surr);
    rec.true_secrecy_bits = d.to_bits(true_secrecy_nats(d, point));
    rec.max_violation = original_violation(d, point);
    rec.ipm_iterations = sol.stats.iterations;
    rec.refinements = refinements;
    res.trace.iterations.push_back(rec);

    if (n >= 2 && std::abs(surr - prev_surr) <= opts.tol_rel * std::max(1.0, std::abs(surr))) {
      res.trace.termination = "converged";
      res.converged = true;
      prev_surr = surr;
      break;
    }
    prev_surr = surr;
  }

  res.point = point;
  res.aux = aux;
  res.solution = to_physical(d, point);
  res.duals = extract_duals(sp, sol, variant, d, pools);
  res.surrogate_bits = d.to_bits(prev_surr);
  return res;
}

SrmResult solve_srm(Variant variant, const ChannelSet& channels, const AnalogBeamformer& bf,
                    const SystemConfig& cfg, const SrmOptions& opts) {
  const auto power = PowerConstraintSpec::from_config(cfg, variant);
  const ScaledData d =
      ScaledData::build(channels, bf, cfg, power, variant == Variant::Robust);
  return solve_srm_scaled(variant, d, opts);
}

namespace {

int numerical_rank_local(const Eigen::MatrixXcd& m, double ratio_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  if (top <= 0.0) return 0;
  int count = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) >= ratio_tol * top) ++count;
  return count;
}

}  // namespace

CertificateReport check_rank_certificates(const DualInfo& duals, const ScaledData& d,
                                          const ScaledPoint& point, double tol) {
  CertificateReport rep;
  const int k_count = d.n_users;
  const int z_count = d.n_eves;
  if (duals.psi3.size() != k_count || duals.psi8.size() != k_count)
    throw std::invalid_argument("check_rank_certificates: missing multipliers");
  const bool robust = duals.variant == Variant::Robust;
  if (robust && (static_cast<int>(duals.t1.size()) != k_count ||
                 static_cast<int>(duals.t2.size()) != k_count))
    throw std::invalid_argument("check_rank_certificates: missing robust multipliers");

  double scale = std::max(std::abs(duals.psi1), std::abs(duals.psi2));
  scale = std::max(scale, duals.psi3.cwiseAbs().maxCoeff());
  scale = std::max(scale, duals.psi8.cwiseAbs().maxCoeff());
  const double pos = tol * (1.0 + scale);

  rep.psi2_positive = duals.psi2 > pos;
  rep.psi1_positive = duals.variant == Variant::PerBsPower
                          ? duals.psi1_per_bs.minCoeff() > pos
                          : duals.psi1 > pos;

  // Strictly worst fronthaul channel (Theorem 1 rank-one condition).
  {
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(d.n_bs));
    for (const auto& g : d.g) norms.push_back(g.norm());
    int arg = 0;
    for (int l = 1; l < d.n_bs; ++l) if (norms[static_cast<std::size_t>(l)] < norms[static_cast<std::size_t>(arg)]) arg = l;
    rep.strict_worst_fronthaul = true;
    for (int l = 0; l < d.n_bs; ++l) {
      if (l == arg) continue;
      if (norms[static_cast<std::size_t>(arg)] >=
          norms[static_cast<std::size_t>(l)] * (1.0 - 1e-9))
        if (d.n_bs > 1) rep.strict_worst_fronthaul = false;
    }
    if (d.n_bs == 1) rep.strict_worst_fronthaul = true;
  }

  rep.min_psi3_minus_psi8.assign(static_cast<std::size_t>(k_count), 0.0);
  rep.min_psi5_minus_sum_psi6.assign(static_cast<std::size_t>(k_count), 0.0);
  rep.thm3_min_eig.assign(static_cast<std::size_t>(k_count), 0.0);
  rep.vk_certified.assign(static_cast<std::size_t>(k_count), false);
  for (int k = 0; k < k_count; ++k) {
    double min38 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k_count; ++i)
      if (i != k) min38 = std::min(min38, duals.psi3(i) - duals.psi8(i));
    if (k_count == 1) min38 = 0.0;
    rep.min_psi3_minus_psi8[static_cast<std::size_t>(k)] = min38;
    bool ok = rep.psi1_positive && min38 >= -pos;
    if (!robust) {
      double min56 = std::numeric_limits<double>::infinity();
      for (int z = 0; z < z_count; ++z) {
        double sum6 = 0.0;
        for (int i = 0; i < k_count; ++i)
          if (i != k) sum6 += duals.psi6(i, z);
        min56 = std::min(min56, duals.psi5(k, z) - sum6);
      }
      if (z_count == 0) min56 = 0.0;
      rep.min_psi5_minus_sum_psi6[static_cast<std::size_t>(k)] = min56;
      ok = ok && min56 >= -pos;
    } else {
      // Aggregated Theorem-3 condition:
      // sum_z [F^H Hz^H T1_{z,k} Hz F - sum_{i != k} F^H Hz^H T2_{z,i} Hz F] >= 0.
      const int l_count = d.n_bs;
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(l_count, l_count);
      for (int z = 0; z < z_count; ++z) {
        const int ml = d.m_ant * l_count;
        Eigen::MatrixXcd hz(ml + 1, ml);
        hz.topRows(ml) = Eigen::MatrixXcd::Identity(ml, ml);
        hz.bottomRows(1) = d.he_full[static_cast<std::size_t>(z)];
        Eigen::MatrixXcd inner =
            hz.adjoint() * duals.t1[static_cast<std::size_t>(k)][static_cast<std::size_t>(z)] *
            hz;
        for (int i = 0; i < k_count; ++i)
          if (i != k)
            inner -= hz.adjoint() *
                     duals.t2[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)] * hz;
        acc += d.f_dense.adjoint() * inner * d.f_dense;
      }
      acc = 0.5 * (acc + acc.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(acc, Eigen::EigenvaluesOnly);
      const double mineig = z_count > 0 ? es.eigenvalues().minCoeff() : 0.0;
      rep.thm3_min_eig[static_cast<std::size_t>(k)] = mineig;
      ok = ok && mineig >= -pos * std::max(1.0, acc.norm());
    }
    rep.vk_certified[static_cast<std::size_t>(k)] = ok;
  }

  rep.rank_v0 = numerical_rank_local(point.v0, 1e-6);
  rep.rank_vk.resize(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k)
    rep.rank_vk[static_cast<std::size_t>(k)] =
        numerical_rank_local(point.vk[static_cast<std::size_t>(k)], 1e-6);
  return rep;
}

}  // namespace secran::srm

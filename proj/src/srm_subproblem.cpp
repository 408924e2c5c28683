// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/srm/subproblem.hpp"

#include <cmath>
#include <stdexcept>

namespace secran::srm {

using conic::CxAffine;
using conic::HermExpr;
using conic::LinExpr;
using conic::MatHandle;

namespace {

std::string idx(const std::string& base, int k) { return base + "_k" + std::to_string(k); }
std::string idx(const std::string& base, int k, int z) {
  return base + "_k" + std::to_string(k) + "_z" + std::to_string(z);
}

// log-spaced anchor grid on [0, umax]: points e^t - 1 with t uniform.
std::vector<double> log_grid(double umax, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double tmax = std::log1p(std::max(umax, 1e-6));
  for (int i = 0; i < count; ++i) {
    const double t = tmax * static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(std::expm1(t));
  }
  return out;
}

}  // namespace

CutPools CutPools::init(const ScaledData& d, int n_beta, int n_fh) {
  CutPools pools;
  pools.beta_points.resize(static_cast<std::size_t>(d.n_users));
  for (int k = 0; k < d.n_users; ++k) {
    // beta <= Tr(H_k V_k) <= ||hbar_k||^2 * budget at full power.
    const double bmax = d.hbar[static_cast<std::size_t>(k)].squaredNorm() * d.bs_total_budget;
    pools.beta_points[static_cast<std::size_t>(k)] = log_grid(bmax, n_beta);
  }
  pools.fh_points.resize(static_cast<std::size_t>(d.n_bs));
  for (int l = 0; l < d.n_bs; ++l) {
    const double umax = d.g[static_cast<std::size_t>(l)].squaredNorm() * d.cp_budget;
    pools.fh_points[static_cast<std::size_t>(l)] = log_grid(umax, n_fh);
  }
  return pools;
}

void CutPools::add_beta(int k, double point) {
  auto& pool = beta_points[static_cast<std::size_t>(k)];
  for (double p : pool)
    if (std::abs(p - point) <= 1e-12 * (1.0 + std::abs(point))) return;
  pool.push_back(point);
}

void CutPools::add_fh(int l, double point) {
  auto& pool = fh_points[static_cast<std::size_t>(l)];
  for (double p : pool)
    if (std::abs(p - point) <= 1e-12 * (1.0 + std::abs(point))) return;
  pool.push_back(point);
}

Subproblem build_subproblem(Variant variant, const ScaledData& d, const AuxState& aux,
                            const CutPools& pools, const FixedDirections* fixed) {
  const int k_count = d.n_users;
  const int z_count = d.n_eves;
  const int l_count = d.n_bs;
  const bool robust = (variant == Variant::Robust);
  for (int k = 0; k < k_count; ++k) {
    if (!(aux.beta(k) > 0.0) || !(aux.eps(k) > 0.0))
      throw std::invalid_argument("build_subproblem: beta/eps anchors must be positive");
  }

  Subproblem sp;
  auto& pb = sp.problem;

  if (fixed) {
    sp.v0 = pb.add_scaled_matrix("V0", fixed->v0 * fixed->v0.adjoint());
    for (int k = 0; k < k_count; ++k) {
      const auto& dir = fixed->vk[static_cast<std::size_t>(k)];
      sp.vk.push_back(pb.add_scaled_matrix("Vk" + std::to_string(k), dir * dir.adjoint()));
    }
  } else {
    sp.v0 = MatHandle::full(pb.add_herm_var("V0", d.n_cp));
    for (int k = 0; k < k_count; ++k)
      sp.vk.push_back(MatHandle::full(pb.add_herm_var("Vk" + std::to_string(k), l_count)));
  }
  sp.lambda = MatHandle::full(pb.add_herm_var("Lambda", l_count));

  for (int k = 0; k < k_count; ++k) {
    sp.beta.push_back(pb.add_var(idx("beta", k)));
    sp.eps.push_back(pb.add_var(idx("eps", k)));
    sp.tau.push_back(pb.add_var(idx("tau", k)));
    sp.theta.push_back(pb.add_var(idx("theta", k)));
    sp.lam.push_back(pb.add_var(idx("lam", k)));
    sp.r_epi.push_back(pb.add_var(idx("r", k)));
    if (z_count > 0) sp.e_epi.push_back(pb.add_var(idx("e", k)));
  }
  sp.gamma.assign(static_cast<std::size_t>(k_count), {});
  sp.zeta.assign(static_cast<std::size_t>(k_count), {});
  sp.mu.assign(static_cast<std::size_t>(k_count), {});
  sp.chi.assign(static_cast<std::size_t>(k_count), {});
  for (int k = 0; k < k_count; ++k)
    for (int z = 0; z < z_count; ++z) {
      sp.gamma[static_cast<std::size_t>(k)].push_back(
          pb.add_var(idx(robust ? "gamma_hat" : "gamma", k, z)));
      sp.zeta[static_cast<std::size_t>(k)].push_back(
          pb.add_var(idx(robust ? "zeta_hat" : "zeta", k, z)));
      sp.mu[static_cast<std::size_t>(k)].push_back(
          pb.add_var(idx(robust ? "mu_hat" : "mu", k, z)));
      if (robust) sp.chi[static_cast<std::size_t>(k)].push_back(pb.add_var(idx("chi", k, z)));
    }
  if (robust)
    for (int z = 0; z < z_count; ++z) {
      sp.kappa.push_back(pb.add_var("kappa_z" + std::to_string(z)));
      sp.upsilon.push_back(pb.add_var("upsilon_z" + std::to_string(z)));
    }
  sp.omega = pb.add_var("omega");

  LinExpr objective;
  for (int k = 0; k < k_count; ++k) {
    objective += LinExpr::variable(sp.r_epi[static_cast<std::size_t>(k)]);
    if (z_count > 0) objective -= LinExpr::variable(sp.e_epi[static_cast<std::size_t>(k)]);
  }
  pb.set_objective_max(objective);

  auto user_interf = [&](int k) {
    LinExpr e;
    for (int i = 0; i < k_count; ++i)
      if (i != k)
        e += sp.vk[static_cast<std::size_t>(i)].tr(d.hbar_outer[static_cast<std::size_t>(k)]);
    e += sp.lambda.tr(d.hbar_outer[static_cast<std::size_t>(k)]);
    return e;
  };

  for (int k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const LinExpr du = user_interf(k);
    const LinExpr sig = sp.vk[ku].tr(d.hbar_outer[ku]);
    const LinExpr beta_v = LinExpr::variable(sp.beta[ku]);
    const LinExpr eps_v = LinExpr::variable(sp.eps[ku]);
    const LinExpr tau_v = LinExpr::variable(sp.tau[ku]);
    const LinExpr theta_v = LinExpr::variable(sp.theta[ku]);
    const LinExpr lam_v = LinExpr::variable(sp.lam[ku]);
    const LinExpr r_v = LinExpr::variable(sp.r_epi[ku]);

    // eps_k >= interference + noise.
    pb.add_ineq(idx("psi3", k), eps_v - du - LinExpr(d.noise));
    // Quadratic surrogate of beta*eps <= Tr(H_k V_k).
    const double s1 = std::sqrt(aux.beta(k) / (2.0 * aux.eps(k)));
    const double s2 = std::sqrt(aux.eps(k) / (2.0 * aux.beta(k)));
    pb.add_lmi(idx("psi4", k), conic::quad_upper_3x3(sig, s1, eps_v, s2, beta_v));
    // tau chain: theta + tau*noise >= Tr(H_k V_k), theta <= lin(lambda^2),
    // lambda^2 <= tau * interference.
    pb.add_ineq(idx("psi7", k), theta_v + d.noise * tau_v - sig);
    pb.add_ineq(idx("lam_lin", k),
                2.0 * aux.lambda(k) * lam_v - LinExpr(aux.lambda(k) * aux.lambda(k)) - theta_v);
    pb.add_lmi(idx("psi8", k), conic::lmi_2x2(tau_v, lam_v, du));
    pb.add_ineq(idx("beta_pos", k), beta_v);
    pb.add_ineq(idx("lam_pos", k), lam_v);
    // Objective epigraph cuts r_k <= log(1+beta_k).
    const auto& bpool = pools.beta_points[ku];
    for (std::size_t j = 0; j < bpool.size(); ++j) {
      const double pj = bpool[j];
      LinExpr cut = LinExpr(std::log1p(pj) - pj / (1.0 + pj));
      cut += (1.0 / (1.0 + pj)) * beta_v;
      cut -= r_v;
      pb.add_ineq(idx("r_cut", k) + "_j" + std::to_string(j), cut);
    }
  }
  sp.n_beta_cuts = static_cast<int>(pools.beta_points[0].size());

  // omega >= sum_k linearized log(1+tau_k).
  {
    LinExpr ot = LinExpr::variable(sp.omega);
    for (int k = 0; k < k_count; ++k) {
      const double ta = aux.tau(k);
      ot -= LinExpr(std::log1p(ta) - ta / (1.0 + ta));
      ot -= (1.0 / (1.0 + ta)) * LinExpr::variable(sp.tau[static_cast<std::size_t>(k)]);
    }
    pb.add_ineq("omega_tau", ot);
    pb.add_ineq("omega_pos", LinExpr::variable(sp.omega));
  }

  // Fronthaul tangent cuts: omega <= eta*log(1 + Tr(G_l V0)).
  for (int l = 0; l < l_count; ++l) {
    const LinExpr u = sp.v0.tr(d.g_outer[static_cast<std::size_t>(l)]);
    const auto& pool = pools.fh_points[static_cast<std::size_t>(l)];
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const double uj = pool[j];
      LinExpr cut = LinExpr(d.eta * (std::log1p(uj) - uj / (1.0 + uj)));
      cut += (d.eta / (1.0 + uj)) * u;
      cut -= LinExpr::variable(sp.omega);
      pb.add_ineq("fh_l" + std::to_string(l) + "_j" + std::to_string(j), cut);
    }
  }
  sp.n_fh_cuts = static_cast<int>(pools.fh_points[0].size());

  // Power constraints.
  if (variant == Variant::PerBsPower) {
    for (int l = 0; l < l_count; ++l) {
      LinExpr e = LinExpr(d.bs_per_budget[static_cast<std::size_t>(l)]);
      for (int k = 0; k < k_count; ++k) e -= sp.vk[static_cast<std::size_t>(k)].diag(l);
      e -= sp.lambda.diag(l);
      pb.add_ineq("psi1_l" + std::to_string(l), e);
    }
  } else {
    LinExpr e = LinExpr(d.bs_total_budget);
    for (int k = 0; k < k_count; ++k) e -= sp.vk[static_cast<std::size_t>(k)].trace();
    e -= sp.lambda.trace();
    pb.add_ineq("psi1", e);
  }
  pb.add_ineq("psi2", LinExpr(d.cp_budget) - sp.v0.trace());

  // Eavesdropper chain.
  if (z_count > 0 && !robust) {
    for (int k = 0; k < k_count; ++k)
      for (int z = 0; z < z_count; ++z) {
        const auto ku = static_cast<std::size_t>(k);
        const auto zu = static_cast<std::size_t>(z);
        const LinExpr gamma_v = LinExpr::variable(sp.gamma[ku][zu]);
        const LinExpr zeta_v = LinExpr::variable(sp.zeta[ku][zu]);
        const LinExpr mu_v = LinExpr::variable(sp.mu[ku][zu]);
        LinExpr de;
        for (int i = 0; i < k_count; ++i)
          if (i != k) de += sp.vk[static_cast<std::size_t>(i)].tr(d.hebar_outer[zu]);
        de += sp.lambda.tr(d.hebar_outer[zu]);
        pb.add_ineq(idx("psi5", k, z),
                    zeta_v + d.noise * gamma_v - sp.vk[ku].tr(d.hebar_outer[zu]));
        const double ma = aux.mu(k, z);
        pb.add_ineq(idx("mu_lin", k, z), 2.0 * ma * mu_v - LinExpr(ma * ma) - zeta_v);
        pb.add_lmi(idx("psi6", k, z), conic::lmi_2x2(gamma_v, mu_v, de));
        pb.add_ineq(idx("mu_pos", k, z), mu_v);
        const double ga = aux.gamma(k, z);
        LinExpr epi = LinExpr::variable(sp.e_epi[ku]);
        epi -= LinExpr(std::log1p(ga) - ga / (1.0 + ga));
        epi -= (1.0 / (1.0 + ga)) * gamma_v;
        pb.add_ineq(idx("eve_epi", k, z), epi);
      }
  } else if (z_count > 0) {
    const Eigen::MatrixXcd f_adj = d.f_dense.adjoint();
    for (int z = 0; z < z_count; ++z) {
      pb.add_ineq("kappa_pos_z" + std::to_string(z),
                  LinExpr::variable(sp.kappa[static_cast<std::size_t>(z)]));
      pb.add_ineq("ups_pos_z" + std::to_string(z),
                  LinExpr::variable(sp.upsilon[static_cast<std::size_t>(z)]));
    }
    for (int k = 0; k < k_count; ++k)
      for (int z = 0; z < z_count; ++z) {
        const auto ku = static_cast<std::size_t>(k);
        const auto zu = static_cast<std::size_t>(z);
        const auto& he = d.he_full[zu];
        const Eigen::RowVectorXcd g_eff = he * d.f_dense;  // 1 x L
        const Eigen::MatrixXcd g_outer = g_eff.adjoint() * g_eff;
        const double sigma_z = d.sigma[zu];
        const LinExpr gamma_v = LinExpr::variable(sp.gamma[ku][zu]);
        const LinExpr zeta_v = LinExpr::variable(sp.zeta[ku][zu]);
        const LinExpr mu_v = LinExpr::variable(sp.mu[ku][zu]);
        const LinExpr chi_v = LinExpr::variable(sp.chi[ku][zu]);
        const LinExpr kappa_v = LinExpr::variable(sp.kappa[zu]);
        const LinExpr ups_v = LinExpr::variable(sp.upsilon[zu]);

        // Upper bound: (he+dh) F V_k F^H (he+dh)^H <= zeta_hat on the ball.
        HermExpr q1 = sp.vk[ku].congruence(d.f_dense);
        std::vector<CxAffine> b1 = sp.vk[ku].sandwich_row(g_eff, f_adj);
        LinExpr c1 = zeta_v - sp.vk[ku].tr(g_outer);
        pb.add_lmi(idx("T1", k, z), conic::sproc_lmi(kappa_v, q1, b1, c1, sigma_z, he,
                                                     conic::SprocForm::UpperBound));

        const double ma = aux.mu_hat(k, z);
        pb.add_ineq(idx("muhat_lin", k, z), 2.0 * ma * mu_v - LinExpr(ma * ma) - zeta_v);
        pb.add_lmi(idx("c111", k, z), conic::lmi_2x2(gamma_v, mu_v, chi_v));
        pb.add_ineq(idx("muhat_pos", k, z), mu_v);

        // Lower bound: chi <= (he+dh) Q (he+dh)^H + noise on the ball,
        // Q = sum_{i!=k} F V_i F^H + F Lambda F^H.
        HermExpr q2(d.m_ant * l_count);
        std::vector<CxAffine> b2(static_cast<std::size_t>(d.m_ant * l_count));
        LinExpr quad2;
        for (int i = 0; i < k_count; ++i) {
          if (i == k) continue;
          q2 += sp.vk[static_cast<std::size_t>(i)].congruence(d.f_dense);
          auto bi = sp.vk[static_cast<std::size_t>(i)].sandwich_row(g_eff, f_adj);
          for (std::size_t t = 0; t < b2.size(); ++t) b2[t] += bi[t];
          quad2 += sp.vk[static_cast<std::size_t>(i)].tr(g_outer);
        }
        q2 += sp.lambda.congruence(d.f_dense);
        auto bl = sp.lambda.sandwich_row(g_eff, f_adj);
        for (std::size_t t = 0; t < b2.size(); ++t) b2[t] += bl[t];
        quad2 += sp.lambda.tr(g_outer);
        LinExpr c2 = quad2 + LinExpr(d.noise) - chi_v;
        pb.add_lmi(idx("T2", k, z), conic::sproc_lmi(ups_v, q2, b2, c2, sigma_z, he,
                                                     conic::SprocForm::LowerBound));

        const double ga = aux.gamma_hat(k, z);
        LinExpr epi = LinExpr::variable(sp.e_epi[ku]);
        epi -= LinExpr(std::log1p(ga) - ga / (1.0 + ga));
        epi -= (1.0 / (1.0 + ga)) * gamma_v;
        pb.add_ineq(idx("eve_epi", k, z), epi);
      }
  }
  return sp;
}

Eigen::VectorXd pack_point(const Subproblem& sp, const ScaledData& d, const ScaledPoint& p,
                           const AuxState& aux) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(sp.problem.num_vars());
  auto set_mat = [&](const MatHandle& h, const Eigen::MatrixXcd& m) {
    if (h.is_full()) {
      const auto& v = h.var();
      for (int i = 0; i < v.n; ++i) y(v.base + i) = m(i, i).real();
      int t = v.n;
      for (int i = 0; i < v.n; ++i)
        for (int j = i + 1; j < v.n; ++j) {
          y(v.base + t++) = m(i, j).real();
          y(v.base + t++) = m(i, j).imag();
        }
    } else {
      // m = s * direction; recover s from traces.
      const Eigen::MatrixXcd dir = h.value(Eigen::VectorXd::Ones(sp.problem.num_vars()));
      const double dt = dir.trace().real();
      y(h.scale_var()) = dt != 0.0 ? m.trace().real() / dt : 0.0;
    }
  };
  set_mat(sp.v0, p.v0);
  for (std::size_t k = 0; k < sp.vk.size(); ++k) set_mat(sp.vk[k], p.vk[k]);
  set_mat(sp.lambda, p.lambda);

  const bool robust = !sp.kappa.empty() || (d.robust && d.n_eves > 0);
  for (int k = 0; k < d.n_users; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    y(sp.beta[ku]) = aux.beta(k);
    y(sp.eps[ku]) = aux.eps(k);
    y(sp.tau[ku]) = aux.tau(k);
    y(sp.theta[ku]) = aux.theta(k);
    y(sp.lam[ku]) = aux.lambda(k);
    y(sp.r_epi[ku]) = std::log1p(aux.beta(k));
    if (d.n_eves > 0) {
      double worst = 0.0;
      for (int z = 0; z < d.n_eves; ++z) {
        const double g = robust ? aux.gamma_hat(k, z) : aux.gamma(k, z);
        worst = std::max(worst, std::log1p(g));
        y(sp.gamma[ku][static_cast<std::size_t>(z)]) = g;
        y(sp.zeta[ku][static_cast<std::size_t>(z)]) =
            robust ? aux.zeta_hat(k, z) : aux.zeta(k, z);
        y(sp.mu[ku][static_cast<std::size_t>(z)]) = robust ? aux.mu_hat(k, z) : aux.mu(k, z);
        if (robust) y(sp.chi[ku][static_cast<std::size_t>(z)]) = aux.chi(k, z);
      }
      y(sp.e_epi[ku]) = worst;
    }
  }
  for (std::size_t z = 0; z < sp.kappa.size(); ++z) {
    y(sp.kappa[z]) = aux.kappa(static_cast<Eigen::Index>(z));
    y(sp.upsilon[z]) = aux.upsilon(static_cast<Eigen::Index>(z));
  }
  y(sp.omega) = aux.omega;
  return y;
}

ScaledPoint extract_point(const Subproblem& sp, const conic::Solution& sol) {
  ScaledPoint p;
  p.v0 = sol.value(sp.v0);
  p.lambda = sol.value(sp.lambda);
  p.vk.reserve(sp.vk.size());
  for (const auto& h : sp.vk) p.vk.push_back(sol.value(h));
  return p;
}

AuxState extract_aux(const Subproblem& sp, const conic::Solution& sol, const ScaledData& d) {
  AuxState a;
  const int k_count = d.n_users;
  const int z_count = d.n_eves;
  a.beta.resize(k_count);
  a.eps.resize(k_count);
  a.tau.resize(k_count);
  a.theta.resize(k_count);
  a.lambda.resize(k_count);
  a.gamma.resize(k_count, z_count);
  a.zeta.resize(k_count, z_count);
  a.mu.resize(k_count, z_count);
  a.gamma_hat.resize(k_count, z_count);
  a.zeta_hat.resize(k_count, z_count);
  a.mu_hat.resize(k_count, z_count);
  a.chi.resize(k_count, z_count);
  a.kappa = Eigen::VectorXd::Zero(z_count);
  a.upsilon = Eigen::VectorXd::Zero(z_count);
  const bool robust = !sp.kappa.empty();
  for (int k = 0; k < k_count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    a.beta(k) = std::max(sol.y(sp.beta[ku]), 1e-8);
    a.eps(k) = std::max(sol.y(sp.eps[ku]), 1e-6);
    a.tau(k) = std::max(sol.y(sp.tau[ku]), 0.0);
    a.theta(k) = sol.y(sp.theta[ku]);
    a.lambda(k) = std::max(sol.y(sp.lam[ku]), 0.0);
    for (int z = 0; z < z_count; ++z) {
      const auto zu = static_cast<std::size_t>(z);
      const double g = std::max(sol.y(sp.gamma[ku][zu]), 0.0);
      const double zt = sol.y(sp.zeta[ku][zu]);
      const double m = std::max(sol.y(sp.mu[ku][zu]), 0.0);
      if (robust) {
        a.gamma_hat(k, z) = g;
        a.zeta_hat(k, z) = zt;
        a.mu_hat(k, z) = m;
        a.chi(k, z) = std::max(sol.y(sp.chi[ku][zu]), 0.0);
      } else {
        a.gamma(k, z) = g;
        a.zeta(k, z) = zt;
        a.mu(k, z) = m;
      }
    }
  }
  for (std::size_t z = 0; z < sp.kappa.size(); ++z) {
    a.kappa(static_cast<Eigen::Index>(z)) = std::max(sol.y(sp.kappa[z]), 0.0);
    a.upsilon(static_cast<Eigen::Index>(z)) = std::max(sol.y(sp.upsilon[z]), 0.0);
  }
  a.omega = sol.y(sp.omega);
  return a;
}

DualInfo extract_duals(const Subproblem& sp, const conic::Solution& sol, Variant variant,
                       const ScaledData& d, const CutPools& pools) {
  DualInfo info;
  info.variant = variant;
  const int k_count = d.n_users;
  const int z_count = d.n_eves;
  const bool robust = (variant == Variant::Robust);
  if (variant == Variant::PerBsPower) {
    info.psi1_per_bs.resize(d.n_bs);
    for (int l = 0; l < d.n_bs; ++l)
      info.psi1_per_bs(l) = sol.dual("psi1_l" + std::to_string(l));
    info.psi1 = info.psi1_per_bs.minCoeff();
  } else {
    info.psi1 = sol.dual("psi1");
  }
  info.psi2 = sol.dual("psi2");
  info.psi3.resize(k_count);
  info.psi4.resize(k_count);
  info.psi7.resize(k_count);
  info.psi8.resize(k_count);
  info.psi5.resize(k_count, std::max(z_count, 1));
  info.psi6.resize(k_count, std::max(z_count, 1));
  info.psi5.setZero();
  info.psi6.setZero();
  for (int k = 0; k < k_count; ++k) {
    info.psi3(k) = sol.dual(idx("psi3", k));
    info.psi4(k) = sol.dual_lmi(idx("psi4", k))(0, 0).real();
    info.psi7(k) = sol.dual(idx("psi7", k));
    info.psi8(k) = sol.dual_lmi(idx("psi8", k))(1, 1).real();
    if (!robust)
      for (int z = 0; z < z_count; ++z) {
        info.psi5(k, z) = sol.dual(idx("psi5", k, z));
        info.psi6(k, z) = sol.dual_lmi(idx("psi6", k, z))(1, 1).real();
      }
  }
  info.psi9 = Eigen::VectorXd::Zero(d.n_bs);
  for (int l = 0; l < d.n_bs; ++l) {
    const auto& pool = pools.fh_points[static_cast<std::size_t>(l)];
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const double mult = sol.dual("fh_l" + std::to_string(l) + "_j" + std::to_string(j));
      info.psi9(l) += mult * d.eta / (1.0 + pool[j]);
    }
  }
  if (sp.v0.is_full()) info.omega0 = sol.dual_lmi("V0");
  info.omega_k.resize(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k)
    if (sp.vk[static_cast<std::size_t>(k)].is_full())
      info.omega_k[static_cast<std::size_t>(k)] = sol.dual_lmi("Vk" + std::to_string(k));
  info.omega_lambda = sol.dual_lmi("Lambda");
  if (robust) {
    info.t1.assign(static_cast<std::size_t>(k_count), {});
    info.t2.assign(static_cast<std::size_t>(k_count), {});
    for (int k = 0; k < k_count; ++k)
      for (int z = 0; z < z_count; ++z) {
        info.t1[static_cast<std::size_t>(k)].push_back(sol.dual_lmi(idx("T1", k, z)));
        info.t2[static_cast<std::size_t>(k)].push_back(sol.dual_lmi(idx("T2", k, z)));
      }
  }
  return info;
}

}  // namespace secran::srm

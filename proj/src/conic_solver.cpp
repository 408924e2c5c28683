// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/conic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace secran::conic {

namespace {

struct SymEig {
  Eigen::MatrixXd u;
  Eigen::VectorXd d;
};

SymEig eig_sym(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return {es.eigenvectors(), es.eigenvalues()};
}

// U diag(max(d, floor)^p) U^T
Eigen::MatrixXd sym_pow(const SymEig& e, double p, double floor_val) {
  Eigen::VectorXd dp = e.d;
  for (int i = 0; i < dp.size(); ++i) dp(i) = std::pow(std::max(dp(i), floor_val), p);
  return e.u * dp.asDiagonal() * e.u.transpose();
}

// sup { alpha >= 0 : X + alpha dX PSD }, X PD.
double max_step(const SymEig& xe, const Eigen::MatrixXd& dx) {
  const double floor_val = 1e-18 * std::max(1e-10, xe.d.maxCoeff());
  Eigen::MatrixXd xmh = sym_pow(xe, -0.5, floor_val);
  Eigen::MatrixXd a = xmh * dx * xmh;
  a = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double frob_dot(const std::vector<Eigen::Triplet<double>>& sparse, const Eigen::MatrixXd& dense) {
  double acc = 0.0;
  for (const auto& t : sparse) acc += t.value() * dense(t.row(), t.col());
  return acc;
}

struct BlockState {
  Eigen::MatrixXd x, s;          // multiplier and slack iterates
  Eigen::MatrixXd w;             // NT scaling
  Eigen::MatrixXd s_inv;
  Eigen::MatrixXd resid;         // F0 + sum y_i F_i - S
  Eigen::MatrixXd rc, dx, ds;
  std::vector<Eigen::MatrixXd> wfw;  // W F_t W per local variable
  SymEig x_eig, s_eig;
};

}  // namespace

IpmResult ipm_solve(const CompiledProblem& prob, const SolveOptions& opts) {
  const int m = prob.m;
  const int n_lp = static_cast<int>(prob.lp.size());
  const int n_blk = static_cast<int>(prob.blocks.size());

  IpmResult res;
  res.y = Eigen::VectorXd::Zero(m);
  if (m == 0) {
    res.status = SolveStatus::Optimal;
    return res;
  }

  // Cold start scaled to the data.
  double const_norm = 1.0;
  for (const auto& row : prob.lp) const_norm = std::max(const_norm, std::abs(row.c0));
  for (const auto& blk : prob.blocks)
    const_norm = std::max(const_norm, blk.f0.cwiseAbs().maxCoeff());
  const double s0 = std::max(1.0, const_norm);
  const double x0 = std::max(1.0, prob.b.cwiseAbs().maxCoeff());

  std::vector<BlockState> bs(static_cast<std::size_t>(n_blk));
  double nu = 0.0;
  for (int j = 0; j < n_blk; ++j) {
    const int n = prob.blocks[static_cast<std::size_t>(j)].n;
    auto& st = bs[static_cast<std::size_t>(j)];
    st.x = x0 * Eigen::MatrixXd::Identity(n, n);
    st.s = s0 * Eigen::MatrixXd::Identity(n, n);
    nu += n;
  }
  Eigen::VectorXd lp_x = Eigen::VectorXd::Constant(n_lp, x0);
  Eigen::VectorXd lp_s = Eigen::VectorXd::Constant(n_lp, s0);
  nu += n_lp;

  Eigen::VectorXd lp_resid(n_lp), lp_w2(n_lp), lp_rc(n_lp), lp_dx(n_lp), lp_ds(n_lp);
  Eigen::VectorXd rd(m), rhs(m), dy(m);
  Eigen::MatrixXd schur(m, m);

  double mu = 0.0, mu_prev = std::numeric_limits<double>::infinity();
  int stall = 0;
  const double inf = std::numeric_limits<double>::infinity();

  auto lp_row_value = [&](int r) {
    const auto& row = prob.lp[static_cast<std::size_t>(r)];
    double v = row.c0;
    for (const auto& [i, a] : row.coeffs) v += a * res.y(i);
    return v;
  };

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    // Residuals.
    double pres = 0.0;
    for (int j = 0; j < n_blk; ++j) {
      const auto& blk = prob.blocks[static_cast<std::size_t>(j)];
      auto& st = bs[static_cast<std::size_t>(j)];
      st.resid = blk.f0 - st.s;
      for (std::size_t t = 0; t < blk.vars.size(); ++t)
        st.resid += res.y(blk.vars[t]) * blk.coeff_dense[t];
      pres = std::max(pres, st.resid.cwiseAbs().maxCoeff() /
                                (1.0 + blk.f0.cwiseAbs().maxCoeff()));
    }
    for (int r = 0; r < n_lp; ++r) {
      lp_resid(r) = lp_row_value(r) - lp_s(r);
      pres = std::max(pres, std::abs(lp_resid(r)) /
                                (1.0 + std::abs(prob.lp[static_cast<std::size_t>(r)].c0)));
    }

    rd = prob.b;
    for (int j = 0; j < n_blk; ++j) {
      const auto& blk = prob.blocks[static_cast<std::size_t>(j)];
      const auto& st = bs[static_cast<std::size_t>(j)];
      for (std::size_t t = 0; t < blk.vars.size(); ++t)
        rd(blk.vars[t]) += frob_dot(blk.coeff_sparse[t], st.x);
    }
    for (int r = 0; r < n_lp; ++r)
      for (const auto& [i, a] : prob.lp[static_cast<std::size_t>(r)].coeffs)
        rd(i) += a * lp_x(r);
    const double dres = rd.cwiseAbs().maxCoeff() / (1.0 + prob.b.cwiseAbs().maxCoeff());

    double comp = lp_x.dot(lp_s);
    for (int j = 0; j < n_blk; ++j)
      comp += (bs[static_cast<std::size_t>(j)].x.transpose() * bs[static_cast<std::size_t>(j)].s)
                  .trace();
    mu = comp / std::max(nu, 1.0);

    const double pobj = prob.b.dot(res.y);
    double dobj = 0.0;
    for (int j = 0; j < n_blk; ++j)
      dobj += (prob.blocks[static_cast<std::size_t>(j)].f0.transpose() *
               bs[static_cast<std::size_t>(j)].x)
                  .trace();
    for (int r = 0; r < n_lp; ++r) dobj += prob.lp[static_cast<std::size_t>(r)].c0 * lp_x(r);
    const double rel_gap = std::abs(dobj - pobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    res.stats.iterations = iter;
    res.stats.rel_gap = rel_gap;
    res.stats.primal_res = pres;
    res.stats.dual_res = dres;

    if (opts.verbose)
      std::printf("it %3d  mu %9.2e  pres %9.2e  dres %9.2e  gap %9.2e  pobj %+.8e\n", iter, mu,
                  pres, dres, rel_gap, pobj);

    if (pres <= opts.tol && dres <= opts.tol && rel_gap <= opts.tol) {
      res.status = SolveStatus::Optimal;
      break;
    }
    if (mu > 0.9999 * mu_prev && pres <= 1e2 * opts.tol && dres <= 1e2 * opts.tol) {
      if (++stall >= 6) {
        res.status = (rel_gap <= 1e2 * opts.tol) ? SolveStatus::Optimal
                                                 : SolveStatus::NumericalProblem;
        break;
      }
    } else {
      stall = 0;
    }
    mu_prev = mu;

    // Divergence heuristics.
    double iterate_norm = lp_x.size() ? lp_x.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& st : bs) iterate_norm = std::max(iterate_norm, st.x.cwiseAbs().maxCoeff());
    if (iterate_norm > 1e13 * x0 && pres > opts.tol) {
      res.status = SolveStatus::Infeasible;
      break;
    }
    if (res.y.cwiseAbs().maxCoeff() > 1e13 && dres > opts.tol) {
      res.status = SolveStatus::Unbounded;
      break;
    }

    // NT scaling per block; W F W per local variable.
    for (int j = 0; j < n_blk; ++j) {
      const auto& blk = prob.blocks[static_cast<std::size_t>(j)];
      auto& st = bs[static_cast<std::size_t>(j)];
      st.s_eig = eig_sym(st.s);
      const double s_floor = 1e-18 * std::max(1e-10, st.s_eig.d.maxCoeff());
      const Eigen::MatrixXd s_half = sym_pow(st.s_eig, 0.5, s_floor);
      const Eigen::MatrixXd s_mhalf = sym_pow(st.s_eig, -0.5, s_floor);
      st.s_inv = sym_pow(st.s_eig, -1.0, s_floor);
      Eigen::MatrixXd mid = s_half * st.x * s_half;
      mid = 0.5 * (mid + mid.transpose());
      SymEig mid_eig = eig_sym(mid);
      const double m_floor = 1e-18 * std::max(1e-10, mid_eig.d.maxCoeff());
      st.w = s_mhalf * sym_pow(mid_eig, 0.5, m_floor) * s_mhalf;
      st.w = 0.5 * (st.w + st.w.transpose());
      st.x_eig = eig_sym(st.x);

      st.wfw.resize(blk.vars.size());
      for (std::size_t t = 0; t < blk.vars.size(); ++t) {
        st.wfw[t] = st.w * blk.coeff_dense[t] * st.w;
        st.wfw[t] = 0.5 * (st.wfw[t] + st.wfw[t].transpose());
      }
    }
    for (int r = 0; r < n_lp; ++r) lp_w2(r) = lp_x(r) / lp_s(r);

    // Schur complement M_ik = sum_j Tr(F_ji W F_jk W) + sum_r w2_r A_ri A_rk.
    schur.setZero();
    for (int j = 0; j < n_blk; ++j) {
      const auto& blk = prob.blocks[static_cast<std::size_t>(j)];
      const auto& st = bs[static_cast<std::size_t>(j)];
      const int nt = static_cast<int>(blk.vars.size());
      for (int t = 0; t < nt; ++t)
        for (int u = 0; u <= t; ++u) {
          const double v = frob_dot(blk.coeff_sparse[static_cast<std::size_t>(u)],
                                    st.wfw[static_cast<std::size_t>(t)]);
          schur(blk.vars[static_cast<std::size_t>(t)], blk.vars[static_cast<std::size_t>(u)]) += v;
          if (t != u)
            schur(blk.vars[static_cast<std::size_t>(u)], blk.vars[static_cast<std::size_t>(t)]) +=
                v;
        }
    }
    for (int r = 0; r < n_lp; ++r) {
      const auto& row = prob.lp[static_cast<std::size_t>(r)].coeffs;
      for (const auto& [i, a] : row)
        for (const auto& [k, b2] : row) schur(i, k) += lp_w2(r) * a * b2;
    }
    const double reg = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
    schur.diagonal().array() += reg;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      schur.diagonal().array() += 1e4 * reg;
      ldlt.compute(schur);
      if (ldlt.info() != Eigen::Success) {
        res.status = SolveStatus::NumericalProblem;
        break;
      }
    }

    auto solve_direction = [&](bool corrector, double sigma_mu) {
      rhs = rd;
      for (int j = 0; j < n_blk; ++j) {
        const auto& blk = prob.blocks[static_cast<std::size_t>(j)];
        auto& st = bs[static_cast<std::size_t>(j)];
        if (!corrector) {
          st.rc = -st.x;
        } else {
          Eigen::MatrixXd second = st.dx * st.ds * st.s_inv;
          st.rc = sigma_mu * st.s_inv - st.x - 0.5 * (second + second.transpose());
        }
        const Eigen::MatrixXd tmp = st.rc - st.w * st.resid * st.w;
        for (std::size_t t = 0; t < blk.vars.size(); ++t)
          rhs(blk.vars[t]) += frob_dot(blk.coeff_sparse[t], tmp);
      }
      for (int r = 0; r < n_lp; ++r) {
        lp_rc(r) = corrector ? (sigma_mu / lp_s(r) - lp_x(r) - lp_dx(r) * lp_ds(r) / lp_s(r))
                             : -lp_x(r);
        const double t = lp_rc(r) - lp_w2(r) * lp_resid(r);
        for (const auto& [i, a] : prob.lp[static_cast<std::size_t>(r)].coeffs) rhs(i) += a * t;
      }
      dy = ldlt.solve(rhs);
      for (int j = 0; j < n_blk; ++j) {
        const auto& blk = prob.blocks[static_cast<std::size_t>(j)];
        auto& st = bs[static_cast<std::size_t>(j)];
        st.ds = st.resid;
        for (std::size_t t = 0; t < blk.vars.size(); ++t)
          st.ds += dy(blk.vars[t]) * blk.coeff_dense[t];
        st.dx = st.rc - st.w * st.ds * st.w;
        st.dx = 0.5 * (st.dx + st.dx.transpose());
      }
      for (int r = 0; r < n_lp; ++r) {
        double t = lp_resid(r);
        for (const auto& [i, a] : prob.lp[static_cast<std::size_t>(r)].coeffs) t += a * dy(i);
        lp_ds(r) = t;
        lp_dx(r) = lp_rc(r) - lp_w2(r) * lp_ds(r);
      }
    };

    auto step_lengths = [&](double cap) {
      double ap = inf, ad = inf;
      for (int j = 0; j < n_blk; ++j) {
        auto& st = bs[static_cast<std::size_t>(j)];
        ap = std::min(ap, max_step(st.x_eig, st.dx));
        ad = std::min(ad, max_step(st.s_eig, st.ds));
      }
      for (int r = 0; r < n_lp; ++r) {
        if (lp_dx(r) < 0) ap = std::min(ap, -lp_x(r) / lp_dx(r));
        if (lp_ds(r) < 0) ad = std::min(ad, -lp_s(r) / lp_ds(r));
      }
      return std::make_pair(std::min(cap * ap, 1.0), std::min(cap * ad, 1.0));
    };

    // Predictor.
    solve_direction(false, 0.0);
    auto [ap_aff, ad_aff] = step_lengths(1.0);
    double comp_aff = 0.0;
    for (int j = 0; j < n_blk; ++j) {
      const auto& st = bs[static_cast<std::size_t>(j)];
      comp_aff += ((st.x + ap_aff * st.dx).transpose() * (st.s + ad_aff * st.ds)).trace();
    }
    for (int r = 0; r < n_lp; ++r)
      comp_aff += (lp_x(r) + ap_aff * lp_dx(r)) * (lp_s(r) + ad_aff * lp_ds(r));
    const double mu_aff = std::max(comp_aff / std::max(nu, 1.0), 0.0);
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
    sigma = std::clamp(sigma, 1e-8, 1.0 - 1e-8);

    // Corrector (reuses the affine directions stored in dx/ds).
    solve_direction(true, sigma * mu);
    auto [ap, ad] = step_lengths(0.98);

    for (int j = 0; j < n_blk; ++j) {
      auto& st = bs[static_cast<std::size_t>(j)];
      st.x += ap * st.dx;
      st.s += ad * st.ds;
      st.x = 0.5 * (st.x + st.x.transpose());
      st.s = 0.5 * (st.s + st.s.transpose());
    }
    lp_x += ap * lp_dx;
    lp_s += ad * lp_ds;
    res.y += ad * dy;

    if (iter == opts.max_iterations - 1) res.status = SolveStatus::MaxIterations;
  }

  res.lp_x = lp_x;
  res.sdp_x.resize(static_cast<std::size_t>(n_blk));
  for (int j = 0; j < n_blk; ++j) res.sdp_x[static_cast<std::size_t>(j)] = bs[static_cast<std::size_t>(j)].x;
  return res;
}

}  // namespace secran::conic

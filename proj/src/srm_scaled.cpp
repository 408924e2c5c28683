// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/srm/scaled.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace secran::srm {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::TotalPower: return "total";
    case Variant::PerBsPower: return "perbs";
    case Variant::Robust: return "robust";
  }
  return "unknown";
}

Variant variant_from_string(const std::string& s) {
  if (s == "total") return Variant::TotalPower;
  if (s == "perbs") return Variant::PerBsPower;
  if (s == "robust") return Variant::Robust;
  throw std::invalid_argument("unknown variant: " + s);
}

PowerConstraintSpec PowerConstraintSpec::from_config(const SystemConfig& cfg, Variant v) {
  PowerConstraintSpec spec;
  if (v == Variant::PerBsPower) {
    spec.mode = Mode::PerBs;
    spec.per_bs.resize(static_cast<std::size_t>(cfg.n_bs));
    spec.total = 0.0;
    for (int l = 0; l < cfg.n_bs; ++l) {
      spec.per_bs[static_cast<std::size_t>(l)] = cfg.bs_budget(l);
      spec.total += cfg.bs_budget(l);
    }
  } else {
    spec.mode = Mode::Total;
    spec.total = cfg.p_bs_total;
  }
  return spec;
}

std::string SolveTrace::csv_header() {
  return "iteration,surrogate_bits,true_secrecy_bits,max_violation,ipm_iterations,refinements";
}

std::string SolveTrace::csv_rows() const {
  std::string out;
  char buf[200];
  for (const auto& r : iterations) {
    std::snprintf(buf, sizeof(buf), "%d,%.9e,%.9e,%.3e,%d,%d\n", r.iteration, r.surrogate_bits,
                  r.true_secrecy_bits, r.max_violation, r.ipm_iterations, r.refinements);
    out += buf;
  }
  return out;
}

ScaledData ScaledData::build(const ChannelSet& channels, const AnalogBeamformer& bf,
                             const SystemConfig& cfg, const PowerConstraintSpec& power,
                             bool robust) {
  channels.validate(cfg);
  ScaledData d;
  d.n_users = cfg.n_users;
  d.n_bs = cfg.n_bs;
  d.n_eves = cfg.n_eves;
  d.n_cp = cfg.n_cp_antennas;
  d.m_ant = cfg.n_bs_antennas;
  d.eta = cfg.eta();
  d.bw_mmwave = cfg.bw_mmwave;
  d.robust = robust;
  d.power_mode = power.mode;

  d.p_bs_scale = power.total;
  d.p_cp_scale = cfg.p_cp;
  d.bs_total_budget = 1.0;
  if (power.mode == PowerConstraintSpec::Mode::PerBs) {
    d.bs_per_budget.resize(power.per_bs.size());
    for (std::size_t l = 0; l < power.per_bs.size(); ++l)
      d.bs_per_budget[l] = power.per_bs[l] / d.p_bs_scale;
  }
  d.cp_budget = 1.0;

  const double access_scale = std::sqrt(d.p_bs_scale / (cfg.bw_mmwave * cfg.noise_psd));
  const double fh_scale = std::sqrt(d.p_cp_scale / (cfg.bw_microwave * cfg.noise_psd));

  d.f_dense = bf.dense();
  d.hbar.resize(static_cast<std::size_t>(d.n_users));
  d.hbar_outer.resize(static_cast<std::size_t>(d.n_users));
  for (int k = 0; k < d.n_users; ++k) {
    d.hbar[static_cast<std::size_t>(k)] =
        access_scale * effective_channel(channels.h[static_cast<std::size_t>(k)], bf);
    d.hbar_outer[static_cast<std::size_t>(k)] =
        d.hbar[static_cast<std::size_t>(k)].adjoint() * d.hbar[static_cast<std::size_t>(k)];
  }
  d.hebar.resize(static_cast<std::size_t>(d.n_eves));
  d.hebar_outer.resize(static_cast<std::size_t>(d.n_eves));
  d.he_full.resize(static_cast<std::size_t>(d.n_eves));
  d.sigma.resize(static_cast<std::size_t>(d.n_eves));
  for (int z = 0; z < d.n_eves; ++z) {
    d.hebar[static_cast<std::size_t>(z)] =
        access_scale * effective_channel(channels.he_est[static_cast<std::size_t>(z)], bf);
    d.hebar_outer[static_cast<std::size_t>(z)] =
        d.hebar[static_cast<std::size_t>(z)].adjoint() * d.hebar[static_cast<std::size_t>(z)];
    d.he_full[static_cast<std::size_t>(z)] =
        access_scale * channels.he_est[static_cast<std::size_t>(z)];
    d.sigma[static_cast<std::size_t>(z)] = cfg.csi_error(z);
  }
  d.g.resize(static_cast<std::size_t>(d.n_bs));
  d.g_outer.resize(static_cast<std::size_t>(d.n_bs));
  for (int l = 0; l < d.n_bs; ++l) {
    d.g[static_cast<std::size_t>(l)] = fh_scale * channels.g[static_cast<std::size_t>(l)];
    d.g_outer[static_cast<std::size_t>(l)] =
        d.g[static_cast<std::size_t>(l)].adjoint() * d.g[static_cast<std::size_t>(l)];
  }
  return d;
}

namespace {

double quad(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& v) {
  return std::max((h * v * h.adjoint())(0, 0).real(), 0.0);
}

}  // namespace

double user_signal(const ScaledData& d, const ScaledPoint& p, int k) {
  return quad(d.hbar[static_cast<std::size_t>(k)], p.vk[static_cast<std::size_t>(k)]);
}

double user_denominator(const ScaledData& d, const ScaledPoint& p, int k) {
  double acc = d.noise;
  for (int i = 0; i < d.n_users; ++i)
    if (i != k) acc += quad(d.hbar[static_cast<std::size_t>(k)], p.vk[static_cast<std::size_t>(i)]);
  acc += quad(d.hbar[static_cast<std::size_t>(k)], p.lambda);
  return acc;
}

double user_sinr(const ScaledData& d, const ScaledPoint& p, int k) {
  return user_signal(d, p, k) / user_denominator(d, p, k);
}

double eve_signal(const ScaledData& d, const ScaledPoint& p, int k, int z) {
  return quad(d.hebar[static_cast<std::size_t>(z)], p.vk[static_cast<std::size_t>(k)]);
}

double eve_denominator(const ScaledData& d, const ScaledPoint& p, int k, int z) {
  double acc = d.noise;
  for (int i = 0; i < d.n_users; ++i)
    if (i != k)
      acc += quad(d.hebar[static_cast<std::size_t>(z)], p.vk[static_cast<std::size_t>(i)]);
  acc += quad(d.hebar[static_cast<std::size_t>(z)], p.lambda);
  return acc;
}

double eve_sinr(const ScaledData& d, const ScaledPoint& p, int k, int z) {
  return eve_signal(d, p, k, z) / eve_denominator(d, p, k, z);
}

double fronthaul_snr(const ScaledData& d, const ScaledPoint& p, int l) {
  return quad(d.g[static_cast<std::size_t>(l)], p.v0);
}

double min_fronthaul_rate_nats(const ScaledData& d, const ScaledPoint& p) {
  double worst = std::numeric_limits<double>::infinity();
  for (int l = 0; l < d.n_bs; ++l)
    worst = std::min(worst, d.eta * std::log1p(fronthaul_snr(d, p, l)));
  return worst;
}

double sum_access_nats(const ScaledData& d, const ScaledPoint& p) {
  double acc = 0.0;
  for (int k = 0; k < d.n_users; ++k) acc += std::log1p(user_sinr(d, p, k));
  return acc;
}

double true_secrecy_nats(const ScaledData& d, const ScaledPoint& p) {
  double acc = 0.0;
  for (int k = 0; k < d.n_users; ++k) {
    double worst = 0.0;
    for (int z = 0; z < d.n_eves; ++z)
      worst = std::max(worst, std::log1p(eve_sinr(d, p, k, z)));
    acc += std::max(0.0, std::log1p(user_sinr(d, p, k)) - worst);
  }
  return acc;
}

double original_violation(const ScaledData& d, const ScaledPoint& p) {
  double viol = 0.0;
  double bs_power = p.lambda.trace().real();
  for (const auto& v : p.vk) bs_power += v.trace().real();
  if (d.power_mode == PowerConstraintSpec::Mode::Total) {
    viol = std::max(viol, (bs_power - d.bs_total_budget) / d.bs_total_budget);
  } else {
    for (int l = 0; l < d.n_bs; ++l) {
      double pl = p.lambda(l, l).real();
      for (const auto& v : p.vk) pl += v(l, l).real();
      viol = std::max(viol, (pl - d.bs_per_budget[static_cast<std::size_t>(l)]) /
                                d.bs_per_budget[static_cast<std::size_t>(l)]);
    }
  }
  viol = std::max(viol, p.v0.trace().real() - d.cp_budget);
  viol = std::max(viol, sum_access_nats(d, p) - min_fronthaul_rate_nats(d, p));
  auto min_eig = [](const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };
  viol = std::max(viol, -min_eig(p.v0));
  viol = std::max(viol, -min_eig(p.lambda));
  for (const auto& v : p.vk) viol = std::max(viol, -min_eig(v));
  return std::max(viol, 0.0);
}

BFSolution to_physical(const ScaledData& d, const ScaledPoint& p) {
  BFSolution s;
  s.V0 = d.p_cp_scale * psd_clip(p.v0);
  s.Lambda = d.p_bs_scale * psd_clip(p.lambda);
  s.Vk.reserve(p.vk.size());
  for (const auto& v : p.vk) s.Vk.push_back(d.p_bs_scale * psd_clip(v));
  return s;
}

ScaledPoint from_physical(const ScaledData& d, const BFSolution& s) {
  ScaledPoint p;
  p.v0 = s.V0 / d.p_cp_scale;
  p.lambda = s.Lambda / d.p_bs_scale;
  p.vk.reserve(s.Vk.size());
  for (const auto& v : s.Vk) p.vk.push_back(v / d.p_bs_scale);
  return p;
}

Eigen::MatrixXcd psd_clip(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() >= 0.0) return h;
  const double trace_before = std::max(ev.sum(), 0.0);
  for (int i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  Eigen::MatrixXcd out =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  const double trace_after = ev.sum();
  if (trace_after > 0.0 && trace_before > 0.0) out *= trace_before / trace_after;
  return out;
}

}  // namespace secran::srm

// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace secran {

namespace {

constexpr double kLog2 = 0.6931471805599453;

// Tr(h^H h V) = h V h^H, real for Hermitian V; clipped at tiny negatives.
double quad_form(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& v) {
  return (h * v * h.adjoint())(0, 0).real();
}

double log2p1(double x) { return std::log1p(x) / kLog2; }

}  // namespace

void BFSolution::validate(double herm_tol, double psd_tol) const {
  auto check = [&](const Eigen::MatrixXcd& m, const char* what) {
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > herm_tol * scale)
      throw std::invalid_argument(std::string("BFSolution: not Hermitian: ") + what);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol * scale)
      throw std::invalid_argument(std::string("BFSolution: not PSD: ") + what);
  };
  check(V0, "V0");
  check(Lambda, "Lambda");
  for (const auto& v : Vk) check(v, "Vk");
  auto check_vec = [&](const Eigen::MatrixXcd& m, const Eigen::VectorXcd& vec, const char* what) {
    const Eigen::MatrixXcd outer = vec * vec.adjoint();
    const double scale = std::max(m.norm(), 1e-300);
    if ((m - outer).norm() > 1e-6 * scale)
      throw std::invalid_argument(std::string("BFSolution: vector/matrix mismatch: ") + what);
  };
  if (v0) check_vec(V0, *v0, "v0");
  for (std::size_t k = 0; k < vk.size(); ++k)
    if (vk[k].size() > 0) check_vec(Vk.at(k), vk[k], "vk");
}

double RateReport::sum_secrecy() const {
  double s = 0;
  for (double v : secrecy) s += v;
  return s;
}

double RateReport::sum_access() const {
  double s = 0;
  for (double v : access) s += v;
  return s;
}

double fronthaul_rate(const Eigen::RowVectorXcd& g_l, const Eigen::MatrixXcd& v0,
                      double bw_microwave, double noise_psd) {
  const double power = quad_form(g_l, v0);
  const double scale = std::max(1.0, g_l.squaredNorm() * v0.norm());
  if (power < -1e-12 * scale)
    throw std::invalid_argument("fronthaul_rate: negative received power (broken PSD)");
  return bw_microwave * log2p1(std::max(power, 0.0) / (bw_microwave * noise_psd));
}

double fronthaul_rate(const Eigen::RowVectorXcd& g_l, const Eigen::VectorXcd& v0_vec,
                      double bw_microwave, double noise_psd) {
  const double power = std::norm((g_l * v0_vec)(0, 0));
  return bw_microwave * log2p1(power / (bw_microwave * noise_psd));
}

namespace {

double sinr_at(int k, const Eigen::RowVectorXcd& hbar,
               const std::vector<Eigen::MatrixXcd>& vk, const Eigen::MatrixXcd& lambda,
               double noise_w) {
  double signal = 0.0;
  double interference = 0.0;
  for (int i = 0; i < static_cast<int>(vk.size()); ++i) {
    const double p = std::max(quad_form(hbar, vk[static_cast<std::size_t>(i)]), 0.0);
    if (i == k)
      signal = p;
    else
      interference += p;
  }
  interference += std::max(quad_form(hbar, lambda), 0.0);
  return signal / (interference + noise_w);
}

}  // namespace

double access_rate(int k, const Eigen::RowVectorXcd& hbar_k,
                   const std::vector<Eigen::MatrixXcd>& vk, const Eigen::MatrixXcd& lambda,
                   double bw_mmwave, double noise_psd) {
  return bw_mmwave * log2p1(sinr_at(k, hbar_k, vk, lambda, bw_mmwave * noise_psd));
}

double eavesdrop_rate(int k, const Eigen::RowVectorXcd& hbar_e,
                      const std::vector<Eigen::MatrixXcd>& vk, const Eigen::MatrixXcd& lambda,
                      double bw_mmwave, double noise_psd) {
  return bw_mmwave * log2p1(sinr_at(k, hbar_e, vk, lambda, bw_mmwave * noise_psd));
}

RateReport secrecy_rates(const BFSolution& solution, const ChannelSet& channels,
                         const AnalogBeamformer& bf, const SystemConfig& cfg,
                         bool use_estimated_eves) {
  RateReport rep;
  const int k_count = cfg.n_users;
  const int z_count = cfg.n_eves;

  rep.fronthaul_per_bs.resize(static_cast<std::size_t>(cfg.n_bs));
  for (int l = 0; l < cfg.n_bs; ++l)
    rep.fronthaul_per_bs[static_cast<std::size_t>(l)] =
        fronthaul_rate(channels.g[static_cast<std::size_t>(l)], solution.V0, cfg.bw_microwave,
                       cfg.noise_psd);
  rep.fronthaul_min = *std::min_element(rep.fronthaul_per_bs.begin(), rep.fronthaul_per_bs.end());

  std::vector<Eigen::RowVectorXcd> hbar(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k)
    hbar[static_cast<std::size_t>(k)] = effective_channel(channels.h[static_cast<std::size_t>(k)], bf);
  std::vector<Eigen::RowVectorXcd> hebar(static_cast<std::size_t>(z_count));
  const auto& eve_rows = use_estimated_eves ? channels.he_est : channels.he_true;
  for (int z = 0; z < z_count; ++z)
    hebar[static_cast<std::size_t>(z)] = effective_channel(eve_rows[static_cast<std::size_t>(z)], bf);

  rep.access.resize(static_cast<std::size_t>(k_count));
  rep.eavesdrop.assign(static_cast<std::size_t>(k_count),
                       std::vector<double>(static_cast<std::size_t>(z_count), 0.0));
  rep.secrecy.resize(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    rep.access[static_cast<std::size_t>(k)] =
        access_rate(k, hbar[static_cast<std::size_t>(k)], solution.Vk, solution.Lambda,
                    cfg.bw_mmwave, cfg.noise_psd);
    double worst = 0.0;
    for (int z = 0; z < z_count; ++z) {
      const double r = eavesdrop_rate(k, hebar[static_cast<std::size_t>(z)], solution.Vk,
                                      solution.Lambda, cfg.bw_mmwave, cfg.noise_psd);
      rep.eavesdrop[static_cast<std::size_t>(k)][static_cast<std::size_t>(z)] = r;
      worst = std::max(worst, r);
    }
    rep.secrecy[static_cast<std::size_t>(k)] =
        std::max(0.0, rep.access[static_cast<std::size_t>(k)] - worst);
  }

  rep.time_shares.resize(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    const double ac = rep.access[static_cast<std::size_t>(k)];
    rep.time_shares[static_cast<std::size_t>(k)] =
        rep.fronthaul_min > 0 ? ac / rep.fronthaul_min
                              : (ac > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  }
  return rep;
}

FeasibilityResult fronthaul_feasibility(const RateReport& report) {
  FeasibilityResult res;
  res.time_shares = report.time_shares;
  res.share_sum = 0.0;
  for (double t : res.time_shares) res.share_sum += t;
  res.feasible = res.share_sum <= 1.0 + 1e-9;
  return res;
}

}  // namespace secran

// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "secran/analog_bf.hpp"
#include "secran/channel.hpp"
#include "secran/config.hpp"

namespace secran {

// Lifted beamforming solution: multicast matrix V0 (N x N), per-user digital
// matrices Vk (L x L), AN covariance Lambda (L x L), plus the recovered
// rank-one vectors once extraction has run.
struct BFSolution {
  Eigen::MatrixXcd V0;
  std::vector<Eigen::MatrixXcd> Vk;
  Eigen::MatrixXcd Lambda;
  std::optional<Eigen::VectorXcd> v0;
  std::vector<Eigen::VectorXcd> vk;  // empty until recovered

  // Hermitian within tol, eigenvalues >= -psd_tol, and (when vectors are
  // present) Vk ~ vk vk^H to 1e-6 relative. Throws on violation.
  void validate(double herm_tol = 1e-9, double psd_tol = 1e-8) const;
};

// Full rate evaluation of a candidate solution. All rates in bit/s.
struct RateReport {
  std::vector<double> fronthaul_per_bs;       // R_l^FH
  double fronthaul_min = 0.0;                 // R_FH = min_l
  std::vector<double> access;                 // R_k^AC
  std::vector<std::vector<double>> eavesdrop; // [k][z] R_{k,z}^EV
  std::vector<double> secrecy;                // [R_k^AC - max_z R_{k,z}^EV]^+
  std::vector<double> time_shares;            // t_k = R_k^AC / R_FH

  double sum_secrecy() const;
  double sum_access() const;
};

// W_mc * log2(1 + Tr(G_l V0)/(W_mc N0)) with G_l = g^H g. Throws when the
// received power Tr(G_l V0) is negative beyond -1e-12 relative (broken PSD).
double fronthaul_rate(const Eigen::RowVectorXcd& g_l, const Eigen::MatrixXcd& v0,
                      double bw_microwave, double noise_psd);
double fronthaul_rate(const Eigen::RowVectorXcd& g_l, const Eigen::VectorXcd& v0_vec,
                      double bw_microwave, double noise_psd);

// W_mm * log2(1 + Tr(Hk Vk) / (sum_{i != k} Tr(Hk Vi) + Tr(Hk Lambda) + W_mm N0)).
double access_rate(int k, const Eigen::RowVectorXcd& hbar_k,
                   const std::vector<Eigen::MatrixXcd>& vk, const Eigen::MatrixXcd& lambda,
                   double bw_mmwave, double noise_psd);

// Same structure evaluated at an eavesdropper channel (robust evaluation just
// supplies the true channel here).
double eavesdrop_rate(int k, const Eigen::RowVectorXcd& hbar_e,
                      const std::vector<Eigen::MatrixXcd>& vk, const Eigen::MatrixXcd& lambda,
                      double bw_mmwave, double noise_psd);

// Full report. Eavesdropper channels default to the true ones; pass
// use_estimated_eves = true to score against the estimates instead.
RateReport secrecy_rates(const BFSolution& solution, const ChannelSet& channels,
                         const AnalogBeamformer& bf, const SystemConfig& cfg,
                         bool use_estimated_eves = false);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> time_shares;  // t_k; +inf when R_FH = 0 with access > 0
  double share_sum = 0.0;
};

// Fronthaul time-share check: t_k = R_k^AC / R_FH, feasible iff sum t_k <= 1 + 1e-9.
FeasibilityResult fronthaul_feasibility(const RateReport& report);

}  // namespace secran

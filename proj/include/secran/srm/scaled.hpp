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
#include <vector>

#include "secran/analog_bf.hpp"
#include "secran/channel.hpp"
#include "secran/rates.hpp"
#include "secran/srm/types.hpp"

namespace secran::srm {

// Nondimensionalized problem data. Powers are measured in units of the BS /
// CP budgets and channels are scaled so that Tr(H V) is directly an SINR
// contribution against unit noise:
//   hbar_scaled = hbar * sqrt(p_bs_scale / (W_mm N0)),
//   g_scaled    = g    * sqrt(p_cp_scale / (W_mc N0)).
struct ScaledData {
  int n_users = 0, n_bs = 0, n_eves = 0, n_cp = 0, m_ant = 0;
  double eta = 0.0;
  double noise = 1.0;

  std::vector<Eigen::RowVectorXcd> hbar;      // K effective user channels (1 x L)
  std::vector<Eigen::MatrixXcd> hbar_outer;   // K, L x L
  std::vector<Eigen::RowVectorXcd> hebar;     // Z effective Eve channels (estimates)
  std::vector<Eigen::MatrixXcd> hebar_outer;  // Z
  std::vector<Eigen::RowVectorXcd> he_full;   // Z full-dimension Eve estimates (1 x M*L)
  std::vector<double> sigma;                  // Z CSI error ratios
  std::vector<Eigen::RowVectorXcd> g;         // L fronthaul channels (1 x N)
  std::vector<Eigen::MatrixXcd> g_outer;      // L, N x N
  Eigen::MatrixXcd f_dense;                   // (M*L) x L analog BF

  double p_bs_scale = 0.0, p_cp_scale = 0.0;  // watts per scaled unit
  double bs_total_budget = 1.0;               // scaled
  std::vector<double> bs_per_budget;          // scaled, PerBs mode
  double cp_budget = 1.0;
  PowerConstraintSpec::Mode power_mode = PowerConstraintSpec::Mode::Total;
  double bw_mmwave = 0.0;                     // physical, for bit/s conversion
  bool robust = false;

  static ScaledData build(const ChannelSet& channels, const AnalogBeamformer& bf,
                          const SystemConfig& cfg, const PowerConstraintSpec& power,
                          bool robust);

  // Internal nats-per-W_mm rate to bit/s.
  double to_bits(double nats) const { return nats * bw_mmwave / 0.6931471805599453; }
};

// Solver-unit iterate.
struct ScaledPoint {
  Eigen::MatrixXcd v0;
  std::vector<Eigen::MatrixXcd> vk;
  Eigen::MatrixXcd lambda;
};

double user_signal(const ScaledData& d, const ScaledPoint& p, int k);
double user_denominator(const ScaledData& d, const ScaledPoint& p, int k);  // incl. noise
double user_sinr(const ScaledData& d, const ScaledPoint& p, int k);
double eve_signal(const ScaledData& d, const ScaledPoint& p, int k, int z);
double eve_denominator(const ScaledData& d, const ScaledPoint& p, int k, int z);
double eve_sinr(const ScaledData& d, const ScaledPoint& p, int k, int z);
double fronthaul_snr(const ScaledData& d, const ScaledPoint& p, int l);
double min_fronthaul_rate_nats(const ScaledData& d, const ScaledPoint& p);
double sum_access_nats(const ScaledData& d, const ScaledPoint& p);

// Clamped secrecy sum, Eve channels at the estimates (the solver's view).
double true_secrecy_nats(const ScaledData& d, const ScaledPoint& p);

// Worst violation of the original constraints (power, fronthaul cap, PSD)
// at the iterate, in scaled units.
double original_violation(const ScaledData& d, const ScaledPoint& p);

BFSolution to_physical(const ScaledData& d, const ScaledPoint& p);
ScaledPoint from_physical(const ScaledData& d, const BFSolution& s);

// Projects tiny negative eigenvalues to zero, rescaling the trace back.
Eigen::MatrixXcd psd_clip(const Eigen::MatrixXcd& m);

}  // namespace secran::srm

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
#include <string>
#include <vector>

#include "secran/config.hpp"

namespace secran::srm {

enum class Variant { TotalPower, PerBsPower, Robust };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// CCCP auxiliary state: the linearization anchors carried between
// iterations. Nominal solvers use beta/eps/gamma/zeta/mu/tau/theta/lambda;
// the robust solver swaps the Eve chain for gamma_hat/zeta_hat/mu_hat/chi
// plus the per-Eve S-procedure slacks kappa/upsilon.
struct AuxState {
  Eigen::VectorXd beta, eps;              // K
  Eigen::MatrixXd gamma, zeta, mu;        // K x Z
  Eigen::VectorXd tau, theta, lambda;     // K
  double omega = 0.0;
  Eigen::MatrixXd gamma_hat, zeta_hat, mu_hat, chi;  // K x Z (robust)
  Eigen::VectorXd kappa, upsilon;                    // Z (robust)
};

struct PowerConstraintSpec {
  enum class Mode { Total, PerBs } mode = Mode::Total;
  double total = 0.0;           // watts
  std::vector<double> per_bs;   // watts, PerBs mode

  static PowerConstraintSpec from_config(const SystemConfig& cfg, Variant v);
};

struct IterationRecord {
  int iteration = 0;
  double surrogate_bits = 0.0;      // solved surrogate objective, bit/s
  double true_secrecy_bits = 0.0;   // clamped secrecy at the iterate, bit/s
  double max_violation = 0.0;       // worst original-constraint violation (scaled)
  int ipm_iterations = 0;
  int refinements = 0;              // tangent-refinement re-solves
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  std::string termination;

  static std::string csv_header();
  std::string csv_rows() const;
};

// Multipliers of the final subproblem, keyed by the paper's names.
// psi6/psi8 are the (2,2) entries of the Eve/tau 2x2 LMI multipliers;
// psi4 is the (1,1) entry of the quadratic-surrogate block multiplier;
// psi9_l aggregates the fronthaul tangent-cut weights on Tr(G_l V0).
struct DualInfo {
  Variant variant = Variant::TotalPower;
  double psi1 = 0.0;
  Eigen::VectorXd psi1_per_bs;          // PerBs mode
  double psi2 = 0.0;
  Eigen::VectorXd psi3, psi4, psi7, psi8;  // K
  Eigen::MatrixXd psi5, psi6;              // K x Z (nominal chain)
  Eigen::VectorXd psi9;                    // L
  Eigen::MatrixXcd omega0;                 // multiplier of V0 >= 0
  std::vector<Eigen::MatrixXcd> omega_k;   // K, multipliers of Vk >= 0
  Eigen::MatrixXcd omega_lambda;
  std::vector<std::vector<Eigen::MatrixXcd>> t1, t2;  // [K][Z] robust LMIs
};

// Theorem 1/2/3 sufficient-condition evaluation plus measured ranks.
struct CertificateReport {
  bool psi2_positive = false;             // Theorem 1 premise
  bool strict_worst_fronthaul = false;    // Theorem 1 rank-one condition
  bool psi1_positive = false;             // Theorems 2/3 premise
  std::vector<bool> vk_certified;         // per user
  std::vector<double> min_psi3_minus_psi8;       // per k, min over i != k
  std::vector<double> min_psi5_minus_sum_psi6;   // per k, min over z (nominal)
  std::vector<double> thm3_min_eig;              // per k (robust)
  int rank_v0 = 0;
  std::vector<int> rank_vk;
};

}  // namespace secran::srm

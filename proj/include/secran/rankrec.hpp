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

#include "secran/rng.hpp"
#include "secran/srm/solver.hpp"

namespace secran::rankrec {

// Count of eigenvalues >= ratio_tol * lambda_max. Throws when the input has
// an eigenvalue below -ratio_tol * max(lambda_max, 1) (not PSD).
int numerical_rank(const Eigen::MatrixXcd& x, double ratio_tol = 1e-6);

// Rank reduction for the multicast matrix: repeatedly factor V0 = X X^H,
// solve Tr(X^H G_l X Gamma) = 0 on the active fronthaul set for a nonzero
// Hermitian Gamma, and update V0 <- X (I - Gamma/rho*) X^H. Preserves the
// active traces exactly, never increases Tr(V0) (Gamma sign chosen so), and
// strictly reduces rank each pass. Stops at rank^2 <= |active_set| or when
// an inactive fronthaul trace would drop below its threshold under both
// Gamma signs (the caller then falls back to randomization).
struct ReduceResult {
  Eigen::MatrixXcd v0;
  int passes = 0;
  bool stalled = false;  // inactive-constraint guard fired
};
ReduceResult reduce_rank_v0(const Eigen::MatrixXcd& v0,
                            const std::vector<Eigen::MatrixXcd>& g_outer,
                            const std::vector<int>& active_set,
                            const std::vector<double>& thresholds);

// Fronthaul constraints binding at the solution: Tr(G_l V0) within rel_tol
// of the certified threshold exp(omega/eta) - 1 (scaled units).
std::vector<int> detect_active_set(const srm::ScaledData& d, const Eigen::MatrixXcd& v0,
                                   double omega, double rel_tol = 1e-6);

// Appendix-C style reconstruction: moves the non-signal energy of every
// rank>1 V_k into the AN covariance while preserving the user's own signal
// power and every other trace exactly. Verifies the dual certificate
// (h_k * null(Y_k) = 0) before transforming; throws when it fails.
struct ReconstructResult {
  srm::ScaledPoint point;
  std::vector<bool> transformed;   // per user
  double max_cert_residual = 0.0;  // worst |h_k Upsilon_k|
};
ReconstructResult reconstruct_vk(const srm::ScaledPoint& point, const srm::DualInfo& duals,
                                 const srm::ScaledData& d, double cert_tol = 1e-5);

// Builds Y_k from the multipliers (scaled space).
Eigen::MatrixXcd build_y_matrix(const srm::DualInfo& duals, const srm::ScaledData& d, int k);

// Gaussian randomization for V0 with per-candidate power re-optimization
// (fixed directions, scalar powers, full AN matrix). Returns the candidate
// with the highest clamped secrecy.
struct RandomizeResult {
  srm::ScaledPoint point;
  Eigen::VectorXcd v0;          // scaled units
  double secrecy_nats = 0.0;
  int best_candidate = -1;
};
RandomizeResult randomize_v0(const srm::ScaledPoint& relaxed, const srm::ScaledData& d,
                             srm::Variant variant, int n_candidates, Rng& rng,
                             const srm::SrmOptions& opts = {});

struct RankReport {
  int rank_v0_before = 0, rank_v0_after = 0;
  std::vector<int> rank_vk_before, rank_vk_after;
  std::string v0_path;               // none | reduction | randomization
  std::vector<std::string> vk_path;  // none | reconstruction
  double objective_before_bits = 0.0, objective_after_bits = 0.0;
  double max_residual = 0.0;  // original-constraint violation after recovery
};

// Full pipeline: reconstruct rank>1 Vk via the dual certificate, reduce V0
// on the active fronthaul set, randomize if the reduction stalls above rank
// one, then extract vectors. Returns the physical solution with v0/vk set.
struct RecoveredSolution {
  BFSolution solution;
  RankReport report;
  srm::ScaledPoint point;  // scaled recovered point
};
RecoveredSolution recover_rank_one(const srm::SrmResult& res, srm::Variant variant, Rng& rng,
                                   int n_candidates = 50, const srm::SrmOptions& opts = {});

// Dominant-eigenpair extraction v with v v^H ~ M.
Eigen::VectorXcd principal_vector(const Eigen::MatrixXcd& m);

}  // namespace secran::rankrec

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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secran/conic/builders.hpp"
#include "secran/conic/problem.hpp"
#include "secran/srm/scaled.hpp"
#include "secran/srm/types.hpp"

namespace secran::srm {

// Tangent-cut pools for the two concave log terms that the conic backend
// cannot express directly: the objective epigraph r_k <= log(1+beta_k) and
// the fronthaul chain omega <= eta*log(1+Tr(G_l V0)). Tangents are to fixed
// functions, so pools stay valid across CCCP iterations and only grow.
struct CutPools {
  std::vector<std::vector<double>> beta_points;  // K pools of anchor SINRs
  std::vector<std::vector<double>> fh_points;    // L pools of anchor SNRs

  static CutPools init(const ScaledData& d, int n_beta, int n_fh);
  void add_beta(int k, double point);
  void add_fh(int l, double point);
};

// Fixed-direction mode for the Appendix-D power re-optimization: V0 and the
// Vk become nonnegative scalars times fixed rank-one matrices.
struct FixedDirections {
  Eigen::VectorXcd v0;                 // scaled units
  std::vector<Eigen::VectorXcd> vk;    // scaled units
};

// One convexified subproblem instance plus the variable handles needed to
// read the solution back.
struct Subproblem {
  conic::Problem problem;
  conic::MatHandle v0, lambda;
  std::vector<conic::MatHandle> vk;
  std::vector<int> beta, eps, tau, theta, lam, r_epi, e_epi;  // K (e_epi empty if Z=0)
  std::vector<std::vector<int>> gamma, zeta, mu;              // K x Z
  std::vector<std::vector<int>> chi;                          // K x Z (robust)
  std::vector<int> kappa, upsilon;                            // Z (robust)
  int omega = -1;
  int n_beta_cuts = 0, n_fh_cuts = 0;

  Subproblem() : v0(conic::MatHandle::full({0, -1})), lambda(v0) {}
};

// Assembles problem (38) / (48) / (66) around the anchors in `aux`.
// Preconditions: beta/eps anchors strictly positive.
Subproblem build_subproblem(Variant variant, const ScaledData& d, const AuxState& aux,
                            const CutPools& pools, const FixedDirections* fixed = nullptr);

// Full assignment vector for feasibility evaluation: matrices from `p`,
// auxiliaries from `aux`, epigraph scalars at their tight values.
Eigen::VectorXd pack_point(const Subproblem& sp, const ScaledData& d, const ScaledPoint& p,
                           const AuxState& aux);

// Reads the matrices out of a solved subproblem.
ScaledPoint extract_point(const Subproblem& sp, const conic::Solution& sol);

// Reads the aux anchors out of a solved subproblem (beta/eps floored to
// keep the next linearization well-posed).
AuxState extract_aux(const Subproblem& sp, const conic::Solution& sol, const ScaledData& d);

DualInfo extract_duals(const Subproblem& sp, const conic::Solution& sol, Variant variant,
                       const ScaledData& d, const CutPools& pools);

}  // namespace secran::srm

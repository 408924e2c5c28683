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

#include "secran/srm/subproblem.hpp"

namespace secran::srm {

struct SrmOptions {
  int t_max = 30;
  double tol_rel = 1e-4;      // relative surrogate-change stop rule
  conic::SolveOptions conic;  // backend tolerances (tol 1e-8 default)
  double cut_tol = 1e-9;      // tangent-refinement target
  int max_refinements = 15;
  int n_beta_cuts = 16;
  int n_fh_cuts = 32;
};

struct SrmResult {
  BFSolution solution;      // physical units, SDP-relaxed (pre rank recovery)
  AuxState aux;
  DualInfo duals;
  SolveTrace trace;
  ScaledPoint point;        // solver units
  ScaledData data;
  double surrogate_bits = 0.0;
  bool converged = false;
};

// Deterministic feasible seed: MRT digital beams at 90% of the BS budget,
// isotropic AN at 10%, isotropic multicast V0; access powers scaled down
// until the fronthaul cap admits the seed; aux values by evaluating their
// defining expressions at the seed. Throws when no feasible seed exists
// (zero channels).
std::pair<ScaledPoint, AuxState> init_aux(const ScaledData& d,
                                          const FixedDirections* fixed = nullptr);

// Full CCCP loop (Algorithm-2 style): build subproblem around the anchors,
// solve, refine tangents, advance anchors to the optimum, repeat until the
// relative surrogate change drops below tol_rel or t_max is reached.
SrmResult solve_srm_scaled(Variant variant, const ScaledData& d, const SrmOptions& opts = {},
                           const FixedDirections* fixed = nullptr);

SrmResult solve_srm(Variant variant, const ChannelSet& channels, const AnalogBeamformer& bf,
                    const SystemConfig& cfg, const SrmOptions& opts = {});

// Theorem 1/2/3 sufficient conditions on the final multipliers plus
// measured numerical ranks. Throws when `duals` lacks required blocks.
CertificateReport check_rank_certificates(const DualInfo& duals, const ScaledData& d,
                                          const ScaledPoint& point, double tol = 1e-7);

}  // namespace secran::srm

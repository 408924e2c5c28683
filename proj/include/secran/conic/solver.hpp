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
#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "secran/conic/problem.hpp"

namespace secran::conic {

// Compiled standard form:  max b'y  s.t.  c0 + A y >= 0 (LP rows),
// F_j0 + sum_i y_i F_ji  PSD (real symmetric blocks).
struct CompiledProblem {
  int m = 0;  // scalar unknowns
  Eigen::VectorXd b;
  double obj_scale = 1.0;

  struct LpRow {
    double c0 = 0.0;
    std::vector<std::pair<int, double>> coeffs;
    double scale = 1.0;  // row was multiplied by scale before solving
    std::string tag;
  };
  std::vector<LpRow> lp;

  struct SdpBlock {
    int n = 0;
    bool embedded = false;  // complex LMI embedded to 2n x 2n real
    double scale = 1.0;
    std::string tag;
    Eigen::MatrixXd f0;
    std::vector<int> vars;
    std::vector<Eigen::MatrixXd> coeff_dense;
    std::vector<std::vector<Eigen::Triplet<double>>> coeff_sparse;
  };
  std::vector<SdpBlock> blocks;
};

struct IpmResult {
  SolveStatus status = SolveStatus::NumericalProblem;
  Eigen::VectorXd y;
  Eigen::VectorXd lp_x;                 // LP multipliers
  std::vector<Eigen::MatrixXd> sdp_x;   // PSD multipliers
  IpmStats stats;
};

// Nesterov-Todd scaled primal-dual predictor-corrector interior-point method.
IpmResult ipm_solve(const CompiledProblem& problem, const SolveOptions& opts);

}  // namespace secran::conic

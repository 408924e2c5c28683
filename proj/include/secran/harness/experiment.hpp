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

#include <cstdint>
#include <string>
#include <vector>

#include "secran/config.hpp"
#include "secran/rankrec.hpp"
#include "secran/srm/solver.hpp"

namespace secran::harness {

// Seeded Monte-Carlo experiment over one sweep dimension. Grid semantics:
// sweep_pbs / sweep_pcp take watts, sweep_users / sweep_eves take counts,
// sweep_sigma takes CSI error ratios; convergence ignores the grid.
struct ExperimentSpec {
  std::string experiment = "convergence";
  std::vector<double> grid{1.0};
  int n_trials = 20;
  SystemConfig base;
  std::vector<srm::Variant> variants{srm::Variant::TotalPower};
  std::string output_csv;
  std::string output_json;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  int n_candidates = 50;

  void validate() const;
  static ExperimentSpec from_text(const std::string& text);
  static ExperimentSpec from_file(const std::string& path);
};

struct TrialRow {
  double grid_value = 0.0;
  int trial = 0;
  srm::Variant variant = srm::Variant::TotalPower;
  std::string status = "ok";  // or the error message
  double secrecy_true_bits = 0.0;   // recovered solution, true Eve channels
  double secrecy_est_bits = 0.0;    // recovered solution, estimated Eve channels
  double surrogate_bits = 0.0;      // final relaxed surrogate
  int iterations = 0;
  bool converged = false;
  int rank_v0 = 0;
  int max_rank_vk = 0;
  std::string v0_path = "none";
  double power_residual = 0.0;      // relative
  double fronthaul_slack_bits = 0.0;  // min R_FH - sum R_AC (bit/s)
  double elapsed_s = 0.0;
  std::uint64_t config_hash = 0;
};

struct TraceRow {
  double grid_value = 0.0;
  int trial = 0;
  srm::Variant variant = srm::Variant::TotalPower;
  srm::IterationRecord record;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;        // sorted by (grid, trial, variant)
  std::vector<TraceRow> trace_rows;  // convergence experiment only

  std::string csv() const;
  std::string trace_csv() const;
  std::string summary_json(const ExperimentSpec& spec) const;
};

// One full trial pipeline on explicit inputs: solve, recover rank one,
// evaluate true rates. Shared by the runner and the acceptance suite.
struct TrialOutcome {
  srm::SrmResult relaxed;
  rankrec::RecoveredSolution recovered;
  RateReport report_true;  // true Eve channels
  RateReport report_est;   // estimated Eve channels
};
TrialOutcome run_trial(const SystemConfig& cfg, srm::Variant variant, std::uint64_t seed,
                       int n_candidates = 50, const srm::SrmOptions& opts = {});

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Applies one grid value to the base config for the given experiment id.
SystemConfig apply_grid_value(const ExperimentSpec& spec, double value);

}  // namespace secran::harness

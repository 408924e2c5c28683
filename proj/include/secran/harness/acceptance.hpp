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
#include <iosfwd>
#include <string>
#include <vector>

namespace secran::harness {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured numbers
};

struct AcceptanceOptions {
  std::uint64_t seed = 20250810;
  int n_instances = 20;      // criterion-1 batch size
  int n_shape_trials = 20;   // Monte-Carlo trials per sweep point
  int threads = 0;
  // Self-test hook: adds an artificial violation to the monotonicity
  // measurement so the corresponding criterion must fail.
  double inject_violation = 0.0;
  bool quick = false;  // reduced batch for smoke tests
  std::ostream* log = nullptr;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  double elapsed_s = 0.0;
  bool all_passed() const;
  std::string to_json() const;
  void print(std::ostream& os) const;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace secran::harness

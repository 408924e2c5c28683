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

#include "secran/channel.hpp"
#include "secran/config.hpp"

namespace secran {

// Block-diagonal quantized analog beamformer. Every entry of f_l has modulus
// 1/sqrt(M) and a phase from the B-bit codebook {2*pi*phi/2^B}, so F^H F = I_L.
struct AnalogBeamformer {
  std::vector<Eigen::VectorXcd> f;  // L vectors of length M
  int n_bs_antennas = 0;

  int n_bs() const { return static_cast<int>(f.size()); }

  // Dense (M*L) x L block-diagonal matrix.
  Eigen::MatrixXcd dense() const;
};

// Nearest B-bit codebook index to target_angle under angular wrap-around;
// ties break toward the smaller index.
int quantize_phase(double target_angle, int bits);

// Codebook phase value 2*pi*phi/2^B.
double codebook_phase(int phi, int bits);

// Round-robin BS-to-user assignment u(l) = l mod K (0-based); each entry of
// f_l co-phases the assigned user's channel, i.e. carries the quantized
// conjugate phase of h_{u(l)}^l(m), maximizing |h_{u(l)}^l f_l| over the
// codebook. Throws on empty channels; L < K leaves some users without a
// dedicated beam (allowed, flagged via `uncovered_users`).
AnalogBeamformer design_analog_bf(const ChannelSet& channels, const SystemConfig& cfg);

// Users that received no dedicated analog beam under the round-robin rule
// (non-empty only when L < K).
std::vector<int> uncovered_users(const SystemConfig& cfg);

// Effective low-dimensional channel h*F = [h^1 f_1, ..., h^L f_L].
Eigen::RowVectorXcd effective_channel(const Eigen::RowVectorXcd& h, const AnalogBeamformer& bf);

}  // namespace secran

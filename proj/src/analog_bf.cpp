// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/analog_bf.hpp"

#include <cmath>
#include <stdexcept>

namespace secran {

Eigen::MatrixXcd AnalogBeamformer::dense() const {
  const int l_count = n_bs();
  const int m = n_bs_antennas;
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(m * l_count, l_count);
  for (int l = 0; l < l_count; ++l) big.block(l * m, l, m, 1) = f[static_cast<std::size_t>(l)];
  return big;
}

double codebook_phase(int phi, int bits) {
  return 2.0 * M_PI * static_cast<double>(phi) / std::pow(2.0, bits);
}

int quantize_phase(double target_angle, int bits) {
  if (bits < 1) throw std::invalid_argument("quantize_phase: bits >= 1 required");
  const int levels = 1 << bits;
  auto wrap_abs = [](double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0) a += 2.0 * M_PI;
    return std::min(a, 2.0 * M_PI - a);
  };
  int best = 0;
  double best_dist = wrap_abs(target_angle);
  for (int phi = 1; phi < levels; ++phi) {
    const double dist = wrap_abs(target_angle - codebook_phase(phi, bits));
    if (dist < best_dist - 1e-15) {
      best = phi;
      best_dist = dist;
    }
  }
  return best;
}

AnalogBeamformer design_analog_bf(const ChannelSet& channels, const SystemConfig& cfg) {
  if (channels.h.empty()) throw std::invalid_argument("design_analog_bf: empty channels");
  channels.validate(cfg);
  const int m = cfg.n_bs_antennas;
  const double amp = 1.0 / std::sqrt(static_cast<double>(m));
  AnalogBeamformer bf;
  bf.n_bs_antennas = m;
  bf.f.resize(static_cast<std::size_t>(cfg.n_bs));
  for (int l = 0; l < cfg.n_bs; ++l) {
    const int user = l % cfg.n_users;  // round-robin assignment
    const auto& h = channels.h[static_cast<std::size_t>(user)];
    Eigen::VectorXcd fl(m);
    for (int i = 0; i < m; ++i) {
      const std::complex<double> hm = h(l * m + i);
      // Co-phase h(m)*f(m): the target f-phase is the conjugate channel phase.
      const double target = -std::arg(hm);
      const int phi = quantize_phase(target, cfg.phase_bits);
      fl(i) = std::polar(amp, codebook_phase(phi, cfg.phase_bits));
    }
    bf.f[static_cast<std::size_t>(l)] = fl;
  }
  return bf;
}

std::vector<int> uncovered_users(const SystemConfig& cfg) {
  std::vector<int> out;
  for (int k = cfg.n_bs; k < cfg.n_users; ++k) out.push_back(k);
  return out;
}

Eigen::RowVectorXcd effective_channel(const Eigen::RowVectorXcd& h, const AnalogBeamformer& bf) {
  const int l_count = bf.n_bs();
  const int m = bf.n_bs_antennas;
  if (static_cast<int>(h.size()) != l_count * m)
    throw std::invalid_argument("effective_channel: dimension mismatch");
  Eigen::RowVectorXcd hbar(l_count);
  for (int l = 0; l < l_count; ++l)
    hbar(l) = h.segment(l * m, m) * bf.f[static_cast<std::size_t>(l)];
  return hbar;
}

}  // namespace secran

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
#include <complex>
#include <vector>

#include "secran/config.hpp"
#include "secran/rng.hpp"

namespace secran {

// Close-in path loss at the mmWave carrier: 69.7 + 24*log10(d) + X_sigma [dB].
// Requires d >= 1 m (the reference distance d0).
double path_loss_mmwave_db(double d, double shadow_db);

// Microwave path loss 38 + 30*log10(d) [dB]. Requires d > 0.
double path_loss_microwave_db(double d);

// ULA steering vector, element m = (1/sqrt(M)) * exp(j*2*pi*spacing*m*sin(theta)).
// Unit norm by construction. spacing is d/lambda (default half wavelength).
Eigen::RowVectorXcd steering_vector(double theta, int m_antennas, double spacing = 0.5);

// h = sqrt(M/C) * sum_c alpha_c a(theta_c): the clustered mmWave channel built
// from explicit path gains and angles.
Eigen::RowVectorXcd mmwave_channel_from_paths(const Eigen::VectorXcd& alpha,
                                              const Eigen::VectorXd& theta, int m_antennas,
                                              double spacing = 0.5);

struct PathSet {
  Eigen::VectorXcd alpha;  // complex gains, path-loss scaled
  Eigen::VectorXd theta;   // angles in [0, pi]
};

// Draws one mmWave link: alpha_c ~ CN(0,1) scaled by the path-loss amplitude
// at distance d (shadowing drawn once per link), theta_c ~ U[0, pi].
PathSet sample_mmwave_paths(Rng& rng, int n_paths, double d, double shadowing_sigma_db);

// i.i.d. CN(0, g) fronthaul entries with g the linear microwave path gain at d.
Eigen::RowVectorXcd sample_fronthaul_channel(Rng& rng, int n_antennas, double d);

// Returns h_est + dh with dh drawn uniformly in the ball ||dh||^2 <= sigma*||h_est||^2.
Eigen::RowVectorXcd apply_csi_error(const Eigen::RowVectorXcd& h_est, double sigma, Rng& rng);

// All channels of one cluster instance. User/Eve channels are stored as
// 1 x (M*L) row vectors [h^1, ..., h^L]; fronthaul channels as 1 x N rows.
struct ChannelSet {
  std::vector<Eigen::RowVectorXcd> g;        // L entries, CP -> BS
  std::vector<Eigen::RowVectorXcd> h;        // K entries, BS cluster -> user
  std::vector<Eigen::RowVectorXcd> he_true;  // Z entries, BS cluster -> Eve (actual)
  std::vector<Eigen::RowVectorXcd> he_est;   // Z entries, estimate known at the CP
  std::vector<std::vector<PathSet>> user_paths;  // [K][L]
  std::vector<std::vector<PathSet>> eve_paths;   // [Z][L]

  static ChannelSet generate(const SystemConfig& cfg, const Topology& topo, Rng& rng);

  // Checks dimensions against cfg and the per-Eve CSI error bound.
  void validate(const SystemConfig& cfg) const;
};

}  // namespace secran

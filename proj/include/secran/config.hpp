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
#include <cstdint>
#include <string>
#include <vector>

#include "secran/rng.hpp"

namespace secran {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// All scalar system parameters. Defaults are the desk-scale configuration;
// powers in watts, bandwidths in Hz, distances in meters.
struct SystemConfig {
  int n_cp_antennas = 8;   // N, CP transmit antennas
  int n_bs_antennas = 4;   // M, per-BS transmit antennas
  int n_bs = 3;            // L, cooperating BSs
  int n_users = 2;         // K
  int n_eves = 1;          // Z
  int n_paths = 4;         // C, scatterers per mmWave link
  int phase_bits = 3;      // B, phase-shifter resolution

  double bw_mmwave = 50e6;     // W_mm [Hz]
  double bw_microwave = 20e6;  // W_mc [Hz]
  double noise_psd = 3.9810717055349694e-21;  // N0 [W/Hz], -174 dBm/Hz

  double p_bs_total = 0.03162277660168379;  // 15 dBm
  std::vector<double> p_bs_per;             // per-BS budgets; empty = equal split
  double p_cp = 39.810717055349734;         // 46 dBm

  double cp_distance = 500.0;     // CP to cluster center [m]
  double cluster_radius = 30.0;   // [m]
  double shadowing_sigma = 4.6;   // [dB]

  std::vector<double> csi_error_ratio;  // sigma_z per Eve; empty = all zero
  std::uint64_t rng_seed = 1;

  double eta() const { return bw_microwave / bw_mmwave; }

  // Per-BS budget with the equal-split default applied.
  double bs_budget(int l) const;
  double csi_error(int z) const;

  // Throws std::invalid_argument when any invariant fails (counts >= 1,
  // powers/bandwidths > 0, sigma_z >= 0, eta finite positive).
  void validate() const;

  // Canonical key=value text form; parse accepts '#' comments and
  // comma-separated lists for p_bs_per / csi_error_ratio.
  std::string to_text() const;
  static SystemConfig from_text(const std::string& text);
  static SystemConfig from_file(const std::string& path);

  // FNV-1a hash of the canonical text form; stamped on every CSV row.
  std::uint64_t hash() const;
};

// Applies a single key=value pair; returns false for unknown keys.
// Shared by the config parser and the experiment-spec parser.
bool apply_config_key(SystemConfig& cfg, const std::string& key, const std::string& value);

// Single-cluster disk geometry. The CP sits at (-cp_distance, 0); the
// cluster center is the origin.
struct Topology {
  std::vector<Eigen::Vector2d> bs_positions;
  std::vector<Eigen::Vector2d> user_positions;
  std::vector<Eigen::Vector2d> eve_positions;
  double cp_distance = 0.0;

  static Topology generate(const SystemConfig& cfg, Rng& rng);

  double cp_to_bs_distance(int l) const;
  double bs_to_user_distance(int l, int k) const;
  double bs_to_eve_distance(int l, int z) const;
};

}  // namespace secran

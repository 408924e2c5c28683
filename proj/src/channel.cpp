// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace secran {

double path_loss_mmwave_db(double d, double shadow_db) {
  if (d < 1.0) throw std::domain_error("path_loss_mmwave: d must be >= 1 m");
  return 69.7 + 24.0 * std::log10(d) + shadow_db;
}

double path_loss_microwave_db(double d) {
  if (!(d > 0.0)) throw std::domain_error("path_loss_microwave: d must be > 0");
  return 38.0 + 30.0 * std::log10(d);
}

Eigen::RowVectorXcd steering_vector(double theta, int m_antennas, double spacing) {
  Eigen::RowVectorXcd a(m_antennas);
  const double phase_step = 2.0 * M_PI * spacing * std::sin(theta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_antennas));
  for (int m = 0; m < m_antennas; ++m)
    a(m) = std::polar(scale, phase_step * static_cast<double>(m));
  return a;
}

Eigen::RowVectorXcd mmwave_channel_from_paths(const Eigen::VectorXcd& alpha,
                                              const Eigen::VectorXd& theta, int m_antennas,
                                              double spacing) {
  const int c = static_cast<int>(alpha.size());
  Eigen::RowVectorXcd h = Eigen::RowVectorXcd::Zero(m_antennas);
  for (int i = 0; i < c; ++i) h += alpha(i) * steering_vector(theta(i), m_antennas, spacing);
  h *= std::sqrt(static_cast<double>(m_antennas) / static_cast<double>(c));
  return h;
}

PathSet sample_mmwave_paths(Rng& rng, int n_paths, double d, double shadowing_sigma_db) {
  if (n_paths < 1) throw std::invalid_argument("sample_mmwave_paths: n_paths >= 1 required");
  // Placement can produce sub-reference distances; clamp to d0 = 1 m.
  const double d_eff = std::max(d, 1.0);
  const double shadow = shadowing_sigma_db * rng.normal();
  const double pl_db = path_loss_mmwave_db(d_eff, shadow);
  const double amp = std::pow(10.0, -pl_db / 20.0);
  PathSet ps;
  ps.alpha.resize(n_paths);
  ps.theta.resize(n_paths);
  for (int c = 0; c < n_paths; ++c) {
    ps.alpha(c) = amp * rng.cnormal();
    ps.theta(c) = rng.uniform(0.0, M_PI);
  }
  return ps;
}

Eigen::RowVectorXcd sample_fronthaul_channel(Rng& rng, int n_antennas, double d) {
  if (n_antennas < 1) throw std::invalid_argument("sample_fronthaul_channel: N >= 1 required");
  const double amp = std::pow(10.0, -path_loss_microwave_db(d) / 20.0);
  Eigen::RowVectorXcd g(n_antennas);
  for (int i = 0; i < n_antennas; ++i) g(i) = amp * rng.cnormal();
  return g;
}

Eigen::RowVectorXcd apply_csi_error(const Eigen::RowVectorXcd& h_est, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("apply_csi_error: sigma >= 0 required");
  if (sigma == 0.0) return h_est;
  const int n = static_cast<int>(h_est.size());
  Eigen::RowVectorXcd dir(n);
  for (int i = 0; i < n; ++i) dir(i) = rng.cnormal();
  const double dn = dir.norm();
  if (dn == 0.0) return h_est;
  // Uniform in the 2n-real-dimensional ball: radius ~ R*u^(1/(2n)).
  const double radius =
      std::sqrt(sigma) * h_est.norm() * std::pow(rng.uniform(), 1.0 / (2.0 * n));
  return h_est + (radius / dn) * dir;
}

ChannelSet ChannelSet::generate(const SystemConfig& cfg, const Topology& topo, Rng& rng) {
  cfg.validate();
  ChannelSet cs;
  const int ml = cfg.n_bs_antennas * cfg.n_bs;

  cs.g.reserve(static_cast<std::size_t>(cfg.n_bs));
  for (int l = 0; l < cfg.n_bs; ++l)
    cs.g.push_back(sample_fronthaul_channel(rng, cfg.n_cp_antennas, topo.cp_to_bs_distance(l)));

  auto draw_access = [&](int count, auto&& dist_fn, std::vector<Eigen::RowVectorXcd>& rows,
                         std::vector<std::vector<PathSet>>& paths) {
    rows.reserve(static_cast<std::size_t>(count));
    paths.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      Eigen::RowVectorXcd row(ml);
      std::vector<PathSet> link_paths;
      link_paths.reserve(static_cast<std::size_t>(cfg.n_bs));
      for (int l = 0; l < cfg.n_bs; ++l) {
        PathSet ps = sample_mmwave_paths(rng, cfg.n_paths, dist_fn(l, i), cfg.shadowing_sigma);
        row.segment(l * cfg.n_bs_antennas, cfg.n_bs_antennas) =
            mmwave_channel_from_paths(ps.alpha, ps.theta, cfg.n_bs_antennas);
        link_paths.push_back(std::move(ps));
      }
      rows.push_back(std::move(row));
      paths.push_back(std::move(link_paths));
    }
  };

  draw_access(cfg.n_users, [&](int l, int k) { return topo.bs_to_user_distance(l, k); },
              cs.h, cs.user_paths);
  draw_access(cfg.n_eves, [&](int l, int z) { return topo.bs_to_eve_distance(l, z); },
              cs.he_est, cs.eve_paths);

  cs.he_true.reserve(static_cast<std::size_t>(cfg.n_eves));
  for (int z = 0; z < cfg.n_eves; ++z)
    cs.he_true.push_back(apply_csi_error(cs.he_est[static_cast<std::size_t>(z)],
                                         cfg.csi_error(z), rng));
  return cs;
}

void ChannelSet::validate(const SystemConfig& cfg) const {
  const int ml = cfg.n_bs_antennas * cfg.n_bs;
  auto check_dims = [](const std::vector<Eigen::RowVectorXcd>& v, int count, int len,
                       const char* what) {
    if (static_cast<int>(v.size()) != count)
      throw std::invalid_argument(std::string("ChannelSet: wrong count for ") + what);
    for (const auto& row : v)
      if (static_cast<int>(row.size()) != len)
        throw std::invalid_argument(std::string("ChannelSet: wrong length for ") + what);
  };
  check_dims(g, cfg.n_bs, cfg.n_cp_antennas, "g");
  check_dims(h, cfg.n_users, ml, "h");
  check_dims(he_true, cfg.n_eves, ml, "he_true");
  check_dims(he_est, cfg.n_eves, ml, "he_est");
  for (int z = 0; z < cfg.n_eves; ++z) {
    const double err = (he_true[static_cast<std::size_t>(z)] -
                        he_est[static_cast<std::size_t>(z)]).squaredNorm();
    const double bound = cfg.csi_error(z) * he_est[static_cast<std::size_t>(z)].squaredNorm();
    if (err > bound * (1.0 + 1e-12) + 1e-30)
      throw std::invalid_argument("ChannelSet: CSI error bound violated");
  }
}

}  // namespace secran

// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "secran/channel.hpp"
#include "secran/config.hpp"
#include "secran/serialize.hpp"

using namespace secran;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("mmWave path loss matches the close-in model") {
  CHECK_THAT(path_loss_mmwave_db(1.0, 0.0), WithinAbs(69.7, 1e-12));
  CHECK_THAT(path_loss_mmwave_db(10.0, 0.0), WithinAbs(93.7, 1e-12));
  CHECK_THAT(path_loss_mmwave_db(1.0, 4.6), WithinAbs(74.3, 1e-12));
  CHECK_THROWS_AS(path_loss_mmwave_db(0.5, 0.0), std::domain_error);
}

TEST_CASE("microwave path loss") {
  CHECK_THAT(path_loss_microwave_db(1.0), WithinAbs(38.0, 1e-12));
  CHECK_THAT(path_loss_microwave_db(500.0), WithinAbs(118.97, 0.01));
  CHECK_THAT(path_loss_microwave_db(100.0), WithinAbs(98.0, 1e-12));
  CHECK_THROWS_AS(path_loss_microwave_db(0.0), std::domain_error);
}

TEST_CASE("steering vector values and unit norm") {
  const auto a0 = steering_vector(0.0, 4);
  for (int m = 0; m < 4; ++m) CHECK_THAT(a0(m).real(), WithinAbs(0.5, 1e-15));
  const auto api = steering_vector(M_PI, 2);
  for (int m = 0; m < 2; ++m) CHECK_THAT(api(m).real(), WithinAbs(M_SQRT1_2, 1e-12));
  const auto a = steering_vector(M_PI / 2, 2, 0.5);
  CHECK_THAT(a(0).real(), WithinAbs(M_SQRT1_2, 1e-12));
  CHECK_THAT(a(1).real(), WithinAbs(-M_SQRT1_2, 1e-12));  // e^{j pi}
  CHECK_THAT(a(1).imag(), WithinAbs(0.0, 1e-12));

  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto v = steering_vector(rng.uniform(0, M_PI), 1 + static_cast<int>(rng.raw() % 16));
    CHECK_THAT(v.norm(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("mmWave channel from explicit paths") {
  // Single unit-gain path at broadside: h = sqrt(M)*a(0) = all-ones.
  Eigen::VectorXcd alpha(1);
  alpha << 1.0;
  Eigen::VectorXd theta(1);
  theta << 0.0;
  const auto h = mmwave_channel_from_paths(alpha, theta, 4);
  for (int m = 0; m < 4; ++m) {
    CHECK_THAT(h(m).real(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(h(m).imag(), WithinAbs(0.0, 1e-14));
  }

  // Two known paths: hand evaluation of the sum.
  Eigen::VectorXcd a2(2);
  a2 << std::complex<double>(0.3, -0.1), std::complex<double>(-0.7, 0.2);
  Eigen::VectorXd t2(2);
  t2 << 0.4, 2.2;
  const int m_ant = 3;
  const auto h2 = mmwave_channel_from_paths(a2, t2, m_ant);
  Eigen::RowVectorXcd expect = Eigen::RowVectorXcd::Zero(m_ant);
  expect += a2(0) * steering_vector(0.4, m_ant);
  expect += a2(1) * steering_vector(2.2, m_ant);
  expect *= std::sqrt(3.0 / 2.0);
  CHECK((h2 - expect).norm() < 1e-14);
}

TEST_CASE("channel sampling is deterministic under a fixed seed") {
  Rng r1(42), r2(42);
  const auto p1 = sample_mmwave_paths(r1, 4, 25.0, 4.6);
  const auto p2 = sample_mmwave_paths(r2, 4, 25.0, 4.6);
  CHECK(p1.alpha == p2.alpha);
  CHECK(p1.theta == p2.theta);
  Rng r3(9), r4(9);
  CHECK(sample_fronthaul_channel(r3, 8, 500.0) == sample_fronthaul_channel(r4, 8, 500.0));
}

TEST_CASE("fronthaul per-entry power matches the path-loss model") {
  const double d = 500.0;
  const double gain = std::pow(10.0, -path_loss_microwave_db(d) / 10.0);
  Rng rng2(123);
  const int draws = 100000;
  double acc2 = 0.0;
  for (int i = 0; i < draws / 8; ++i) {
    const auto g = sample_fronthaul_channel(rng2, 8, d);
    acc2 += g.squaredNorm();
  }
  const double mean_power = acc2 / draws;
  CHECK_THAT(mean_power, WithinRel(gain, 0.05));

  // Scaling ratio between distances follows the dB difference.
  const double ratio = std::pow(10.0, -(path_loss_microwave_db(500.0) -
                                        path_loss_microwave_db(100.0)) / 10.0);
  CHECK_THAT(ratio, WithinRel(std::pow(10.0, -(118.97 - 98.0) / 10.0), 1e-3));
}

TEST_CASE("CSI error stays in the prescribed ball") {
  Rng rng(5);
  Eigen::RowVectorXcd h(6);
  for (int i = 0; i < 6; ++i) h(i) = rng.cnormal();

  SECTION("sigma = 0 returns the estimate exactly") {
    const auto out = apply_csi_error(h, 0.0, rng);
    CHECK(out == h);
  }

  SECTION("bound holds for every draw") {
    const double sigma = 0.05;
    double worst_ratio = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const auto out = apply_csi_error(h, sigma, rng);
      worst_ratio = std::max(worst_ratio, (out - h).squaredNorm() / h.squaredNorm());
    }
    CHECK(worst_ratio <= sigma * (1.0 + 1e-12));
    CHECK(worst_ratio > 0.5 * sigma);  // draws actually reach out in the ball
  }
}

TEST_CASE("topology and channels are bit-reproducible and respect invariants") {
  SystemConfig cfg;
  cfg.csi_error_ratio = {0.05};
  cfg.validate();

  Rng ra(cfg.rng_seed), rb(cfg.rng_seed);
  const auto topo_a = Topology::generate(cfg, ra);
  const auto topo_b = Topology::generate(cfg, rb);
  for (int l = 0; l < cfg.n_bs; ++l)
    CHECK(topo_a.bs_positions[l] == topo_b.bs_positions[l]);
  for (const auto& p : topo_a.user_positions) CHECK(p.norm() <= cfg.cluster_radius);
  for (const auto& p : topo_a.eve_positions) CHECK(p.norm() <= cfg.cluster_radius);

  const auto cs_a = ChannelSet::generate(cfg, topo_a, ra);
  const auto cs_b = ChannelSet::generate(cfg, topo_b, rb);
  for (int k = 0; k < cfg.n_users; ++k) CHECK(cs_a.h[k] == cs_b.h[k]);
  for (int l = 0; l < cfg.n_bs; ++l) CHECK(cs_a.g[l] == cs_b.g[l]);
  for (int z = 0; z < cfg.n_eves; ++z) CHECK(cs_a.he_true[z] == cs_b.he_true[z]);
  CHECK_NOTHROW(cs_a.validate(cfg));
}

TEST_CASE("config round-trips through the key=value form") {
  SystemConfig cfg;
  cfg.n_users = 3;
  cfg.p_bs_per = {0.01, 0.02, 0.03};
  cfg.csi_error_ratio = {0.01};
  cfg.rng_seed = 99;
  cfg.n_bs = 3;
  const auto text = cfg.to_text();
  const auto back = SystemConfig::from_text(text);
  CHECK(back.to_text() == text);
  CHECK(back.hash() == cfg.hash());
  CHECK_THROWS_AS(SystemConfig::from_text("nonsense_key = 3\n"), std::invalid_argument);
  SystemConfig bad;
  bad.n_users = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("channel serialization round-trips exactly") {
  SystemConfig cfg;
  cfg.csi_error_ratio = {0.02};
  Rng rng(17);
  const auto topo = Topology::generate(cfg, rng);
  const auto cs = ChannelSet::generate(cfg, topo, rng);
  std::stringstream ss;
  write_channels(ss, cs);
  const auto back = read_channels(ss);
  for (int k = 0; k < cfg.n_users; ++k) CHECK(back.h[k] == cs.h[k]);
  for (int l = 0; l < cfg.n_bs; ++l) CHECK(back.g[l] == cs.g[l]);
  for (int z = 0; z < cfg.n_eves; ++z) {
    CHECK(back.he_true[z] == cs.he_true[z]);
    CHECK(back.he_est[z] == cs.he_est[z]);
  }
}

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

#include "secran/analog_bf.hpp"
#include "secran/serialize.hpp"

using namespace secran;
using Catch::Matchers::WithinAbs;

namespace {

ChannelSet random_channels(const SystemConfig& cfg, uint64_t seed) {
  Rng rng(seed);
  const auto topo = Topology::generate(cfg, rng);
  return ChannelSet::generate(cfg, topo, rng);
}

double array_gain(const Eigen::RowVectorXcd& h_block, const Eigen::VectorXcd& f) {
  return std::abs((h_block * f)(0, 0));
}

}  // namespace

TEST_CASE("phase quantization picks the nearest codebook point with wrap-around") {
  CHECK(quantize_phase(0.0, 3) == 0);
  CHECK(quantize_phase(1.0, 2) == 1);            // pi/2 beats 0
  CHECK(quantize_phase(2 * M_PI - 0.01, 2) == 0);  // wrap-around beats phi=3

  // Enumeration oracle on random angles.
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int bits = 1 + static_cast<int>(rng.raw() % 5);
    const double angle = rng.uniform(-10.0, 10.0);
    const int got = quantize_phase(angle, bits);
    auto wrap = [](double a) {
      a = std::fmod(a, 2 * M_PI);
      if (a < 0) a += 2 * M_PI;
      return std::min(a, 2 * M_PI - a);
    };
    double best = 1e9;
    int best_idx = 0;
    for (int phi = 0; phi < (1 << bits); ++phi) {
      const double dist = wrap(angle - codebook_phase(phi, bits));
      if (dist < best - 1e-15) {
        best = dist;
        best_idx = phi;
      }
    }
    CHECK(got == best_idx);
  }
}

TEST_CASE("analog BF round-robin assignment and unit-modulus structure") {
  SystemConfig cfg;
  cfg.n_bs = 2;
  cfg.n_users = 2;
  const auto cs = random_channels(cfg, 11);
  const auto bf = design_analog_bf(cs, cfg);

  // BS l serves user l (round robin with L == K).
  const int m = cfg.n_bs_antennas;
  for (int l = 0; l < cfg.n_bs; ++l) {
    const int user = l % cfg.n_users;
    const auto block = cs.h[user].segment(l * m, m);
    const double gain = array_gain(block, bf.f[l]);
    // The assigned user's gain beats the other user's on this BS (almost surely).
    const auto other = cs.h[1 - user].segment(l * m, m);
    CHECK(gain >= array_gain(other, bf.f[l]) * 0.5);
    for (int i = 0; i < m; ++i)
      CHECK_THAT(std::abs(bf.f[l](i)), WithinAbs(1.0 / std::sqrt(m), 1e-12));
  }

  // F^H F = I_L.
  const auto fd = bf.dense();
  CHECK((fd.adjoint() * fd - Eigen::MatrixXcd::Identity(cfg.n_bs, cfg.n_bs)).norm() < 1e-12);
}

TEST_CASE("single-antenna BS reduces to a unit phasor") {
  SystemConfig cfg;
  cfg.n_bs_antennas = 1;
  cfg.n_bs = 2;
  cfg.n_users = 2;
  const auto cs = random_channels(cfg, 13);
  const auto bf = design_analog_bf(cs, cfg);
  for (int l = 0; l < cfg.n_bs; ++l) {
    CHECK_THAT(std::abs(bf.f[l](0)), WithinAbs(1.0, 1e-12));
    const auto block = cs.h[l % cfg.n_users].segment(l, 1);
    // Gain approaches |h| as quantization allows; with B=3 within cos(pi/8).
    CHECK(array_gain(block, bf.f[l]) >= std::abs(block(0)) * std::cos(M_PI / 8.0) - 1e-12);
  }
}

TEST_CASE("fine codebook reaches the co-phasing bound on a single-path channel") {
  SystemConfig cfg;
  cfg.phase_bits = 16;
  cfg.n_paths = 1;
  cfg.n_bs = 1;
  cfg.n_users = 1;
  const auto cs = random_channels(cfg, 17);
  const auto bf = design_analog_bf(cs, cfg);
  const int m = cfg.n_bs_antennas;
  const auto block = cs.h[0].segment(0, m);
  const double gain = array_gain(block, bf.f[0]);
  const double bound = block.cwiseAbs().sum() / std::sqrt(m);  // ||h||_1 / sqrt(M)
  CHECK_THAT(gain, WithinAbs(bound, 1e-3 * bound));
}

TEST_CASE("designed beam dominates every constant-phase vector") {
  SystemConfig cfg;
  const auto cs = random_channels(cfg, 19);
  const auto bf = design_analog_bf(cs, cfg);
  const int m = cfg.n_bs_antennas;
  for (int l = 0; l < cfg.n_bs; ++l) {
    const auto block = cs.h[l % cfg.n_users].segment(l * m, m);
    const double gain = array_gain(block, bf.f[l]);
    for (int phi = 0; phi < (1 << cfg.phase_bits); ++phi) {
      Eigen::VectorXcd constant = Eigen::VectorXcd::Constant(
          m, std::polar(1.0 / std::sqrt(m), codebook_phase(phi, cfg.phase_bits)));
      CHECK(gain >= array_gain(block, constant) - 1e-12);
    }
  }
}

TEST_CASE("doubling the phase resolution never loses array gain") {
  SystemConfig cfg;
  const auto cs = random_channels(cfg, 23);
  const int m = cfg.n_bs_antennas;
  double prev = -1.0;
  for (int bits : {1, 2, 4, 8}) {
    SystemConfig c2 = cfg;
    c2.phase_bits = bits;
    const auto bf = design_analog_bf(cs, c2);
    double total = 0.0;
    for (int l = 0; l < cfg.n_bs; ++l)
      total += array_gain(cs.h[l % cfg.n_users].segment(l * m, m), bf.f[l]);
    CHECK(total >= prev - 1e-12);
    prev = total;
  }
}

TEST_CASE("effective channel equals the dense product") {
  SystemConfig cfg;
  const auto cs = random_channels(cfg, 29);
  const auto bf = design_analog_bf(cs, cfg);
  const auto fd = bf.dense();

  // All-ones channel with co-phased all-ones beam gives sqrt(M) entries.
  AnalogBeamformer ones_bf;
  ones_bf.n_bs_antennas = cfg.n_bs_antennas;
  ones_bf.f.assign(cfg.n_bs, Eigen::VectorXcd::Constant(cfg.n_bs_antennas,
                                                        1.0 / std::sqrt(cfg.n_bs_antennas)));
  Eigen::RowVectorXcd ones = Eigen::RowVectorXcd::Ones(cfg.n_bs_antennas * cfg.n_bs);
  const auto eff_ones = effective_channel(ones, ones_bf);
  for (int l = 0; l < cfg.n_bs; ++l)
    CHECK_THAT(eff_ones(l).real(), WithinAbs(std::sqrt(cfg.n_bs_antennas), 1e-12));

  // Zero in, zero out.
  CHECK(effective_channel(Eigen::RowVectorXcd::Zero(ones.size()), bf).norm() == 0.0);

  // Dense-product oracle on random channels.
  for (int k = 0; k < cfg.n_users; ++k) {
    const auto eff = effective_channel(cs.h[k], bf);
    CHECK((eff - cs.h[k] * fd).norm() < 1e-13 * std::max(1.0, eff.norm()));
  }
  CHECK_THROWS_AS(effective_channel(Eigen::RowVectorXcd::Zero(3), bf), std::invalid_argument);
}

TEST_CASE("analog BF serialization round-trips") {
  SystemConfig cfg;
  const auto cs = random_channels(cfg, 31);
  const auto bf = design_analog_bf(cs, cfg);
  std::stringstream ss;
  write_analog_bf(ss, bf);
  const auto back = read_analog_bf(ss);
  REQUIRE(back.f.size() == bf.f.size());
  for (std::size_t l = 0; l < bf.f.size(); ++l) CHECK(back.f[l] == bf.f[l]);
}

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

#include "secran/rates.hpp"

using namespace secran;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Fixture {
  SystemConfig cfg;
  ChannelSet cs;
  AnalogBeamformer bf;

  explicit Fixture(uint64_t seed, int users = 2, int eves = 1) {
    cfg.n_users = users;
    cfg.n_eves = eves;
    cfg.csi_error_ratio = {0.0};
    Rng rng(seed);
    const auto topo = Topology::generate(cfg, rng);
    cs = ChannelSet::generate(cfg, topo, rng);
    bf = design_analog_bf(cs, cfg);
  }

  BFSolution random_solution(uint64_t seed) const {
    Rng rng(seed);
    BFSolution sol;
    auto rand_psd = [&](int n, double scale) {
      Eigen::MatrixXcd a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.cnormal();
      return Eigen::MatrixXcd(scale * (a * a.adjoint()) / n);
    };
    sol.V0 = rand_psd(cfg.n_cp_antennas, cfg.p_cp / 4);
    for (int k = 0; k < cfg.n_users; ++k)
      sol.Vk.push_back(rand_psd(cfg.n_bs, cfg.p_bs_total / (2.0 * cfg.n_users)));
    sol.Lambda = rand_psd(cfg.n_bs, cfg.p_bs_total / 10);
    return sol;
  }
};

}  // namespace

TEST_CASE("fronthaul rate basics") {
  Fixture fx(1);
  const auto& g = fx.cs.g[0];

  SECTION("zero multicast covariance gives zero rate") {
    Eigen::MatrixXcd v0 = Eigen::MatrixXcd::Zero(fx.cfg.n_cp_antennas, fx.cfg.n_cp_antennas);
    CHECK(fronthaul_rate(g, v0, fx.cfg.bw_microwave, fx.cfg.noise_psd) == 0.0);
  }

  SECTION("unit SNR gives exactly W_mc bits") {
    // Rank-one V0 aligned with g, scaled so |g v0|^2 = W_mc N0.
    Eigen::VectorXcd v = g.adjoint() / g.norm();
    const double power = fx.cfg.bw_microwave * fx.cfg.noise_psd / g.squaredNorm();
    Eigen::VectorXcd v0 = std::sqrt(power) * v;
    CHECK_THAT(fronthaul_rate(g, v0, fx.cfg.bw_microwave, fx.cfg.noise_psd),
               WithinRel(fx.cfg.bw_microwave, 1e-12));
    // Matrix form agrees with the vector form.
    Eigen::MatrixXcd v0m = v0 * v0.adjoint();
    CHECK_THAT(fronthaul_rate(g, v0m, fx.cfg.bw_microwave, fx.cfg.noise_psd),
               WithinRel(fronthaul_rate(g, v0, fx.cfg.bw_microwave, fx.cfg.noise_psd), 1e-9));
  }

  SECTION("broken PSD is rejected") {
    Eigen::MatrixXcd v0 =
        -Eigen::MatrixXcd::Identity(fx.cfg.n_cp_antennas, fx.cfg.n_cp_antennas);
    CHECK_THROWS_AS(fronthaul_rate(g, v0, fx.cfg.bw_microwave, fx.cfg.noise_psd),
                    std::invalid_argument);
  }
}

TEST_CASE("access rate identities") {
  Fixture fx(2);
  const auto hbar0 = effective_channel(fx.cs.h[0], fx.bf);

  SECTION("zero Vk gives zero rate") {
    std::vector<Eigen::MatrixXcd> vk(2, Eigen::MatrixXcd::Zero(fx.cfg.n_bs, fx.cfg.n_bs));
    Eigen::MatrixXcd lam = Eigen::MatrixXcd::Zero(fx.cfg.n_bs, fx.cfg.n_bs);
    CHECK(access_rate(0, hbar0, vk, lam, fx.cfg.bw_mmwave, fx.cfg.noise_psd) == 0.0);
  }

  SECTION("single user at unit SNR gives W_mm bits") {
    Eigen::VectorXcd v = hbar0.adjoint() / hbar0.norm();
    const double p = fx.cfg.bw_mmwave * fx.cfg.noise_psd / hbar0.squaredNorm();
    std::vector<Eigen::MatrixXcd> vk{p * v * v.adjoint()};
    Eigen::MatrixXcd lam = Eigen::MatrixXcd::Zero(fx.cfg.n_bs, fx.cfg.n_bs);
    CHECK_THAT(access_rate(0, hbar0, vk, lam, fx.cfg.bw_mmwave, fx.cfg.noise_psd),
               WithinRel(fx.cfg.bw_mmwave, 1e-12));
  }

  SECTION("matrix form equals vector form on rank-one solutions") {
    Rng rng(5);
    Eigen::VectorXcd v1(fx.cfg.n_bs), v2(fx.cfg.n_bs);
    for (int i = 0; i < fx.cfg.n_bs; ++i) {
      v1(i) = rng.cnormal() * 1e-4;
      v2(i) = rng.cnormal() * 1e-4;
    }
    std::vector<Eigen::MatrixXcd> vk{v1 * v1.adjoint(), v2 * v2.adjoint()};
    Eigen::MatrixXcd lam = Eigen::MatrixXcd::Zero(fx.cfg.n_bs, fx.cfg.n_bs);
    const double wn = fx.cfg.bw_mmwave * fx.cfg.noise_psd;
    const double sig = std::norm((hbar0 * v1)(0, 0));
    const double intf = std::norm((hbar0 * v2)(0, 0));
    const double direct = fx.cfg.bw_mmwave * std::log2(1.0 + sig / (intf + wn));
    CHECK_THAT(access_rate(0, hbar0, vk, lam, fx.cfg.bw_mmwave, fx.cfg.noise_psd),
               WithinRel(direct, 1e-9));
  }
}

TEST_CASE("eavesdropper rate mirrors access rate structure") {
  Fixture fx(3);
  const auto hbar0 = effective_channel(fx.cs.h[0], fx.bf);
  const auto sol = fx.random_solution(7);

  SECTION("zero Eve channel gives zero rate") {
    Eigen::RowVectorXcd zero = Eigen::RowVectorXcd::Zero(fx.cfg.n_bs);
    CHECK(eavesdrop_rate(0, zero, sol.Vk, sol.Lambda, fx.cfg.bw_mmwave, fx.cfg.noise_psd) ==
          0.0);
  }

  SECTION("Eve on the user's channel sees the user's rate") {
    const double ra =
        access_rate(0, hbar0, sol.Vk, sol.Lambda, fx.cfg.bw_mmwave, fx.cfg.noise_psd);
    const double re =
        eavesdrop_rate(0, hbar0, sol.Vk, sol.Lambda, fx.cfg.bw_mmwave, fx.cfg.noise_psd);
    CHECK_THAT(re, WithinRel(ra, 1e-12));
  }

  SECTION("artificial noise monotonically suppresses the Eve") {
    const auto hebar = effective_channel(fx.cs.he_true[0], fx.bf);
    double prev = 1e300;
    for (double c : {1.0, 10.0, 100.0}) {
      Eigen::MatrixXcd lam =
          sol.Lambda + c * fx.cfg.p_bs_total * Eigen::MatrixXcd::Identity(fx.cfg.n_bs, fx.cfg.n_bs);
      const double re =
          eavesdrop_rate(0, hebar, sol.Vk, lam, fx.cfg.bw_mmwave, fx.cfg.noise_psd);
      CHECK(re < prev);
      prev = re;
    }
  }
}

TEST_CASE("secrecy report: clamping, worst Eve, hand-computed instance") {
  Fixture fx(4, 2, 2);
  auto sol = fx.random_solution(9);
  const auto rep = secrecy_rates(sol, fx.cs, fx.bf, fx.cfg);

  REQUIRE(rep.access.size() == 2);
  REQUIRE(rep.eavesdrop.size() == 2);
  REQUIRE(rep.eavesdrop[0].size() == 2);
  for (int k = 0; k < 2; ++k) {
    const double worst = std::max(rep.eavesdrop[k][0], rep.eavesdrop[k][1]);
    CHECK_THAT(rep.secrecy[k], WithinAbs(std::max(0.0, rep.access[k] - worst), 1e-9));
    // Hand evaluation for this instance.
    const auto hbar = effective_channel(fx.cs.h[k], fx.bf);
    CHECK_THAT(rep.access[k],
               WithinRel(access_rate(k, hbar, sol.Vk, sol.Lambda, fx.cfg.bw_mmwave,
                                     fx.cfg.noise_psd),
                         1e-12));
  }
  CHECK(rep.fronthaul_min == *std::min_element(rep.fronthaul_per_bs.begin(),
                                               rep.fronthaul_per_bs.end()));
}

TEST_CASE("secrecy is monotone in Eve channel scale and in AN inflation") {
  Fixture fx(6);
  auto sol = fx.random_solution(11);

  // Scaling the Eve channel up never increases secrecy.
  double prev_sum = 1e300;
  ChannelSet scaled = fx.cs;
  for (double c : {1.0, 2.0, 5.0}) {
    scaled.he_true[0] = c * fx.cs.he_true[0];
    scaled.he_est[0] = scaled.he_true[0];
    const auto rep = secrecy_rates(sol, scaled, fx.bf, fx.cfg);
    CHECK(rep.sum_secrecy() <= prev_sum + 1e-9);
    prev_sum = rep.sum_secrecy();
  }

  // Lambda -> Lambda + delta*I lowers both access and Eve rates.
  const auto base = secrecy_rates(sol, fx.cs, fx.bf, fx.cfg);
  BFSolution inflated = sol;
  inflated.Lambda += 0.3 * fx.cfg.p_bs_total *
                     Eigen::MatrixXcd::Identity(fx.cfg.n_bs, fx.cfg.n_bs);
  const auto rep2 = secrecy_rates(inflated, fx.cs, fx.bf, fx.cfg);
  for (int k = 0; k < fx.cfg.n_users; ++k) {
    CHECK(rep2.access[k] <= base.access[k] + 1e-9);
    for (int z = 0; z < fx.cfg.n_eves; ++z)
      CHECK(rep2.eavesdrop[k][z] <= base.eavesdrop[k][z] + 1e-9);
  }
}

TEST_CASE("fronthaul feasibility time shares") {
  RateReport rep;
  rep.fronthaul_per_bs = {3e8, 2e8};
  rep.fronthaul_min = 2e8;

  SECTION("boundary: sum of access equals the fronthaul") {
    rep.access = {1.5e8, 0.5e8};
    rep.time_shares = {1.5e8 / 2e8, 0.5e8 / 2e8};
    const auto res = fronthaul_feasibility(rep);
    CHECK(res.feasible);
    CHECK_THAT(res.share_sum, WithinAbs(1.0, 1e-12));
  }

  SECTION("all access zero is trivially feasible") {
    rep.access = {0.0, 0.0};
    rep.time_shares = {0.0, 0.0};
    const auto res = fronthaul_feasibility(rep);
    CHECK(res.feasible);
    CHECK(res.share_sum == 0.0);
  }

  SECTION("1.5x oversubscription is infeasible") {
    rep.access = {2e8, 1e8};
    rep.time_shares = {1.0, 0.5};
    const auto res = fronthaul_feasibility(rep);
    CHECK_FALSE(res.feasible);
    CHECK_THAT(res.share_sum, WithinAbs(1.5, 1e-12));
  }

  SECTION("zero fronthaul with nonzero access reports infinite shares") {
    rep.fronthaul_min = 0.0;
    rep.access = {1.0, 0.0};
    rep.time_shares = {std::numeric_limits<double>::infinity(), 0.0};
    const auto res = fronthaul_feasibility(rep);
    CHECK_FALSE(res.feasible);
  }
}

TEST_CASE("BFSolution validation catches broken inputs") {
  Fixture fx(8);
  auto sol = fx.random_solution(13);
  CHECK_NOTHROW(sol.validate());
  auto bad = sol;
  bad.Vk[0](0, 1) += std::complex<double>(0.0, 1e-3) * bad.Vk[0].norm();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  auto neg = sol;
  neg.Lambda -= 2.0 * neg.Lambda.norm() *
                Eigen::MatrixXcd::Identity(fx.cfg.n_bs, fx.cfg.n_bs);
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}

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

#include "secran/conic/builders.hpp"
#include "secran/conic/problem.hpp"
#include "secran/rng.hpp"

using namespace secran;
using namespace secran::conic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::MatrixXcd random_hermitian(Rng& rng, int n, bool psd = false) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.cnormal();
  if (psd) return a * a.adjoint() / n;
  return 0.5 * (a + a.adjoint());
}

double min_eig(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("complex-to-real embedding") {
  SECTION("1x1 real scalar becomes diag(a,a)") {
    Eigen::MatrixXcd a(1, 1);
    a(0, 0) = 2.5;
    const auto e = embed_complex_psd(a);
    CHECK(e.rows() == 2);
    CHECK_THAT(e(0, 0), WithinAbs(2.5, 1e-15));
    CHECK_THAT(e(1, 1), WithinAbs(2.5, 1e-15));
    CHECK_THAT(e(0, 1), WithinAbs(0.0, 1e-15));
  }

  SECTION("[[0,j],[-j,0]] has embedded eigenvalues {-1,-1,1,1}") {
    Eigen::MatrixXcd h(2, 2);
    h << 0.0, std::complex<double>(0, 1), std::complex<double>(0, -1), 0.0;
    const auto e = embed_complex_psd(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    CHECK_THAT(ev(0), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(ev(1), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(ev(2), WithinAbs(1.0, 1e-12));
    CHECK_THAT(ev(3), WithinAbs(1.0, 1e-12));
  }

  SECTION("PSD is preserved and the trace doubles") {
    Rng rng(1);
    for (int t = 0; t < 30; ++t) {
      const auto h = random_hermitian(rng, 2 + static_cast<int>(rng.raw() % 5), true);
      const auto e = embed_complex_psd(h);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
      CHECK_THAT(e.trace(), WithinRel(2.0 * h.trace().real(), 1e-12));
      // Round trip and the x2 pairing convention.
      const auto back = unembed_real(e);
      CHECK((back - h).norm() < 1e-12 * std::max(1.0, h.norm()));
      const auto b = random_hermitian(rng, static_cast<int>(h.rows()));
      const double lhs = (embed_complex_psd(h) * embed_complex_psd(b)).trace();
      const double rhs = 2.0 * (h * b).trace().real();
      CHECK_THAT(lhs, WithinAbs(rhs, 1e-9 * std::max(1.0, std::abs(rhs))));
    }
  }

  SECTION("non-Hermitian input is rejected") {
    Eigen::MatrixXcd h(2, 2);
    h << 1.0, 1.0, 2.0, 1.0;
    CHECK_THROWS_AS(embed_complex_psd(h), std::invalid_argument);
  }
}

TEST_CASE("2x2 LMI builder equals its Schur-complement inequality") {
  // Static feasibility checks at fixed numbers.
  auto feasible = [](double a, double b, double c) {
    Problem p;
    (void)p;
    Eigen::MatrixXcd m(2, 2);
    m << a, b, b, c;
    return min_eig(m) >= -1e-12;
  };
  CHECK(feasible(1.0, 0.0, 0.0));   // boundary
  CHECK_FALSE(feasible(1.0, 2.0, 1.0));  // det = -3

  // Schur oracle on 100 random points: [[a,b],[b,c]] >= 0  iff
  // a >= 0, c >= 0, ac >= b^2.
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(-0.2, 2.0);
    const double b = rng.uniform(-1.5, 1.5);
    const double c = rng.uniform(-0.2, 2.0);
    const bool lmi = feasible(a, b, c);
    const bool ineq = a >= -1e-12 && c >= -1e-12 && a * c - b * b >= -1e-10;
    CHECK(lmi == ineq);
  }

  // As a constraint in a solve: maximize b subject to [[1,b],[b,4]] >= 0 -> b = 2.
  Problem p;
  const int b = p.add_var("b");
  p.add_lmi("box", lmi_2x2(LinExpr(1.0), LinExpr::variable(b), LinExpr(4.0)));
  p.set_objective_max(LinExpr::variable(b));
  const auto sol = p.solve();
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK_THAT(sol.objective, WithinAbs(2.0, 1e-6));
}

TEST_CASE("solve: min Tr(X) s.t. X >= I") {
  Problem p;
  const MatVar x = p.add_herm_var("X", 2);
  HermExpr shifted = matvar_expr(x);
  shifted.add_constant(-Eigen::MatrixXcd::Identity(2, 2));
  p.add_lmi("lower", shifted);
  LinExpr trace;
  for (int i = 0; i < 2; ++i) trace.add(x.base + i, 1.0);
  p.set_objective_max(-1.0 * trace);
  const auto sol = p.solve();
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK_THAT(-sol.objective, WithinAbs(2.0, 1e-6));
  const auto xv = sol.value(x);
  CHECK((xv - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-5);
}

TEST_CASE("solve: embedded LP with exact dual") {
  Problem p;
  const int x = p.add_var("x");
  p.add_ineq("cap", LinExpr(3.0) - LinExpr::variable(x));
  p.set_objective_max(LinExpr::variable(x));
  const auto sol = p.solve();
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK_THAT(sol.objective, WithinAbs(3.0, 1e-7));
  CHECK_THAT(sol.dual("cap"), WithinAbs(1.0, 1e-6));
}

TEST_CASE("solve: random 2x2 SDP against extreme-point enumeration") {
  Rng rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    const Eigen::MatrixXcd c = random_hermitian(rng, 2);
    Problem p;
    const MatVar x = p.add_herm_var("X", 2);
    LinExpr trace;
    for (int i = 0; i < 2; ++i) trace.add(x.base + i, 1.0);
    p.add_ineq("budget", LinExpr(1.0) - trace);
    p.set_objective_max(tr_expr(c, x));
    const auto sol = p.solve();
    REQUIRE(sol.status == SolveStatus::Optimal);

    // Brute-force over the extreme points (rank-one, trace one): u(theta,phi).
    double best = 0.0;  // X = 0 allowed
    const int n_t = 1500, n_p = 1500;
    for (int it = 0; it <= n_t; ++it) {
      const double th = M_PI / 2 * it / n_t;
      for (int ip = 0; ip < n_p; ++ip) {
        const double ph = 2 * M_PI * ip / n_p;
        const std::complex<double> u0 = std::cos(th);
        const std::complex<double> u1 = std::polar(std::sin(th), ph);
        const double val = (c(0, 0).real() * std::norm(u0) + c(1, 1).real() * std::norm(u1) +
                            2.0 * std::real(c(0, 1) * std::conj(u0) * u1));
        best = std::max(best, val);
      }
    }
    CHECK_THAT(sol.objective, WithinAbs(best, 1e-4 * std::max(1.0, std::abs(best))));
    // Closed form: max(lambda_max(C), 0).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c, Eigen::EigenvaluesOnly);
    CHECK_THAT(sol.objective,
               WithinAbs(std::max(es.eigenvalues().maxCoeff(), 0.0), 1e-6));
    CHECK(sol.stats.rel_gap <= 10.0 * 1e-8);
  }
}

TEST_CASE("solve: rotated quadratic block against closed form") {
  // max u + v subject to u^2 + v^2 <= t, t <= 2 -> u = v = 1.
  Problem p;
  const int u = p.add_var("u");
  const int v = p.add_var("v");
  const int t = p.add_var("t");
  p.add_lmi("quad", quad_upper_3x3(LinExpr::variable(t), 1.0, LinExpr::variable(u), 1.0,
                                   LinExpr::variable(v)));
  p.add_ineq("cap", LinExpr(2.0) - LinExpr::variable(t));
  p.set_objective_max(LinExpr::variable(u) + LinExpr::variable(v));
  const auto sol = p.solve();
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK_THAT(sol.objective, WithinAbs(2.0, 1e-6));
  CHECK_THAT(sol.y(u), WithinAbs(1.0, 1e-5));
  CHECK_THAT(sol.y(v), WithinAbs(1.0, 1e-5));
}

TEST_CASE("solve: KKT self-consistency on random mixed problems") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 6 + static_cast<int>(rng.raw() % 6);
    Problem p;
    std::vector<int> vars;
    for (int i = 0; i < m; ++i) vars.push_back(p.add_var());
    // Random LMI around a strictly feasible origin: C + sum y_i A_i with C > 0.
    const int n = 3;
    HermExpr lmi(n);
    lmi.add_constant(random_hermitian(rng, n, true) +
                     Eigen::MatrixXcd::Identity(n, n));
    for (int i = 0; i < m; ++i) lmi.add_term(vars[i], 0.3 * random_hermitian(rng, n));
    p.add_lmi("block", lmi);
    // Box rows keep it bounded.
    LinExpr obj;
    for (int i = 0; i < m; ++i) {
      p.add_ineq("ub" + std::to_string(i), LinExpr(1.0) - LinExpr::variable(vars[i]));
      p.add_ineq("lb" + std::to_string(i), LinExpr(1.0) + LinExpr::variable(vars[i]));
      obj += rng.uniform(-1.0, 1.0) * LinExpr::variable(vars[i]);
    }
    p.set_objective_max(obj);
    const auto sol = p.solve();
    REQUIRE(sol.status == SolveStatus::Optimal);
    // Primal feasibility at the reported point.
    CHECK(p.min_slack(sol.y) >= -1e-7);
    // Stationarity: gradient of objective + sum dual * gradient(constraints) = 0.
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(m);
    for (const auto& [vi, cc] : p.objective().terms) grad(vi) += cc;
    for (int i = 0; i < m; ++i) {
      grad(vars[i]) += -sol.dual("ub" + std::to_string(i));
      grad(vars[i]) += sol.dual("lb" + std::to_string(i));
    }
    const auto psi = sol.dual_lmi("block");
    for (int i = 0; i < m; ++i) {
      // d/dy_i Tr(Psi*(C + sum y A)) = Tr(Psi A_i).
      const auto& coeff = lmi.coeffs().at(vars[i]);
      grad(vars[i]) += (psi * coeff).trace().real();
    }
    CHECK(grad.cwiseAbs().maxCoeff() < 1e-5);
    // LMI dual is PSD.
    CHECK(min_eig(psi) >= -1e-8);
  }
}

TEST_CASE("solver flags pathological problems") {
  SECTION("infeasible") {
    Problem p;
    const int x = p.add_var();
    p.add_ineq("a", LinExpr::variable(x) - LinExpr(1.0));   // x >= 1
    p.add_ineq("b", -LinExpr::variable(x) - LinExpr(1.0));  // x <= -1
    p.set_objective_max(LinExpr::variable(x));
    const auto sol = p.solve();
    CHECK(sol.status != SolveStatus::Optimal);
  }
  SECTION("unbounded") {
    Problem p;
    const int x = p.add_var();
    p.add_ineq("a", LinExpr::variable(x));  // x >= 0
    p.set_objective_max(LinExpr::variable(x));
    const auto sol = p.solve();
    CHECK(sol.status != SolveStatus::Optimal);
  }
}

TEST_CASE("S-procedure LMI certifies ball-robust bounds") {
  Rng rng(11);
  const int n = 5;
  const Eigen::MatrixXcd a = random_hermitian(rng, n, true);
  Eigen::RowVectorXcd h(n);
  for (int i = 0; i < n; ++i) h(i) = rng.cnormal();
  const double sigma = 0.08;

  // Exact worst case and its multiplier from the trust-region search.
  const auto wc = worst_case_quadratic_max(h, a, sigma);

  SECTION("trust-region extrema match ball sampling") {
    double sampled_max = 0.0, sampled_min = 1e300;
    Rng srng(13);
    const double rho = std::sqrt(sigma) * h.norm();
    for (int s = 0; s < 20000; ++s) {
      Eigen::RowVectorXcd d(n);
      for (int i = 0; i < n; ++i) d(i) = srng.cnormal();
      d *= rho * std::pow(srng.uniform(), 1.0 / (2 * n)) / d.norm();
      if (s % 7 == 0) d *= rho / d.norm();  // include boundary points
      const double q = ((h + d) * a * (h + d).adjoint())(0, 0).real();
      sampled_max = std::max(sampled_max, q);
      sampled_min = std::min(sampled_min, q);
    }
    const auto wmin = worst_case_quadratic_min(h, a, sigma);
    CHECK(sampled_max <= wc.value * (1 + 1e-9));
    CHECK(sampled_max >= wc.value * 0.97);
    CHECK(sampled_min >= wmin.value * (1 - 1e-9) - 1e-12);
  }

  SECTION("upper-bound LMI is PSD exactly when zeta covers the worst case") {
    auto lmi_at = [&](double zeta, double kappa) {
      Problem p;
      (void)p;
      HermExpr q(n);
      q.add_constant(a);
      std::vector<CxAffine> b_row(n);
      const Eigen::RowVectorXcd ha = h * a;
      for (int i = 0; i < n; ++i) b_row[i] = CxAffine(ha(i));
      const LinExpr c = LinExpr(zeta - (h * a * h.adjoint())(0, 0).real());
      const HermExpr m =
          sproc_lmi(LinExpr(kappa), q, b_row, c, sigma, h, SprocForm::UpperBound);
      return min_eig(m.eval(Eigen::VectorXd::Zero(0)));
    };
    CHECK(lmi_at(wc.value * 1.001, wc.multiplier) >= -1e-9);
    CHECK(lmi_at(wc.value * 0.9, wc.multiplier) < 0.0);

    // Feasible certificate implies no sampled violation beyond 1e-7.
    const double zeta = wc.value * 1.0000001;
    Rng srng(17);
    const double rho = std::sqrt(sigma) * h.norm();
    double worst_violation = -1e300;
    for (int s = 0; s < 1000; ++s) {
      Eigen::RowVectorXcd d(n);
      for (int i = 0; i < n; ++i) d(i) = srng.cnormal();
      d *= rho / d.norm();
      const double q = ((h + d) * a * (h + d).adjoint())(0, 0).real();
      worst_violation = std::max(worst_violation, q - zeta);
    }
    CHECK(worst_violation <= 1e-7 * std::max(1.0, zeta));
  }

  SECTION("sigma = 0 reduces to the nominal inequality") {
    const auto wc0 = worst_case_quadratic_max(h, a, 0.0);
    CHECK_THAT(wc0.value, WithinRel((h * a * h.adjoint())(0, 0).real(), 1e-9));
  }

  SECTION("zero data with nonnegative corner is feasible") {
    HermExpr q(n);  // zero
    std::vector<CxAffine> b_row(n);
    const HermExpr m =
        sproc_lmi(LinExpr(0.0), q, b_row, LinExpr(0.5), 0.1, h, SprocForm::UpperBound);
    CHECK(min_eig(m.eval(Eigen::VectorXd::Zero(0))) >= -1e-12);
  }
}

TEST_CASE("problem dump emits sparse triplets") {
  Problem p;
  const int x = p.add_var("x");
  p.add_ineq("row", LinExpr(1.0) - LinExpr::variable(x));
  p.add_lmi("block", lmi_2x2(LinExpr::variable(x), LinExpr(0.5), LinExpr(2.0)));
  p.set_objective_max(LinExpr::variable(x));
  std::ostringstream os;
  p.dump(os);
  const auto text = os.str();
  CHECK(text.find("ineq row") != std::string::npos);
  CHECK(text.find("lmi block") != std::string::npos);
  CHECK(text.find("vars=1") != std::string::npos);
}

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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "secran/conic/expr.hpp"

namespace secran::conic {

enum class SolveStatus { Optimal, MaxIterations, NumericalProblem, Infeasible, Unbounded };

const char* to_string(SolveStatus s);

struct SolveOptions {
  double tol = 1e-8;        // feasibility and relative-gap target
  int max_iterations = 200;
  bool verbose = false;
};

struct IpmStats {
  int iterations = 0;
  double rel_gap = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
};

// Result of one conic solve. Duals follow the convention that the Lagrangian
// of `max b'y  s.t.  g_r(y) >= 0, M_j(y) >= 0` is
//   b'y + sum_r dual(r)*g_r(y) + sum_j Tr(dual_lmi(j)*M_j(y)),
// i.e. complex LMI multipliers already include the embedding factor of two.
struct Solution {
  SolveStatus status = SolveStatus::NumericalProblem;
  double objective = 0.0;
  Eigen::VectorXd y;
  IpmStats stats;

  std::map<std::string, double> ineq_duals;
  std::map<std::string, Eigen::MatrixXcd> lmi_duals;

  double dual(const std::string& tag) const;
  const Eigen::MatrixXcd& dual_lmi(const std::string& tag) const;
  double value(const LinExpr& e) const { return e.eval(y); }
  Eigen::MatrixXcd value(const MatVar& v) const { return matvar_value(v, y); }
  Eigen::MatrixXcd value(const MatHandle& h) const { return h.value(y); }
};

// Canonical conic problem: free scalar variables, scalar inequality rows,
// Hermitian PSD LMI blocks, linear objective. Every constraint carries a
// unique tag used for dual lookup.
class Problem {
 public:
  int add_var(const std::string& name = "");

  // Adds an n x n Hermitian matrix variable and registers the PSD constraint
  // on the variable itself under `tag`.
  MatVar add_herm_var(const std::string& tag, int n);

  // Matrix slot with fixed direction: V = s * direction, s >= 0 registered
  // under tag (direction must be Hermitian PSD).
  MatHandle add_scaled_matrix(const std::string& tag, const Eigen::MatrixXcd& direction);

  void add_ineq(const std::string& tag, const LinExpr& e);
  void add_lmi(const std::string& tag, const HermExpr& m);
  void set_objective_max(const LinExpr& e);

  Solution solve(const SolveOptions& opts = {}) const;

  // Worst slack across all constraints at assignment y (ineq value or LMI
  // minimum eigenvalue). Nonnegative values mean feasible.
  struct Residual {
    std::string tag;
    double slack;
  };
  std::vector<Residual> residuals(const Eigen::VectorXd& y) const;
  double min_slack(const Eigen::VectorXd& y) const;

  int num_vars() const { return n_vars_; }
  int num_ineqs() const { return static_cast<int>(ineqs_.size()); }
  int num_lmis() const { return static_cast<int>(lmis_.size()); }
  const LinExpr& objective() const { return objective_; }

  // Text dump: objective and sparse triplets per constraint block.
  void dump(std::ostream& os) const;

 private:
  struct Ineq {
    std::string tag;
    LinExpr expr;
  };
  struct Lmi {
    std::string tag;
    HermExpr expr;
  };

  void check_tag(const std::string& tag);

  int n_vars_ = 0;
  std::vector<std::string> var_names_;
  std::vector<Ineq> ineqs_;
  std::vector<Lmi> lmis_;
  LinExpr objective_;
  std::map<std::string, int> tags_;  // tag -> kind*big + index

  friend struct Compiler;
};

// Complex-to-real PSD embedding [[Re, -Im], [Im, Re]] and its adjoint.
// Tr(embed(A) * embed(B)) = 2 * Tr(A B) for Hermitian A, B.
Eigen::MatrixXd embed_complex_psd(const Eigen::MatrixXcd& h, double herm_tol = 1e-9);
Eigen::MatrixXcd unembed_real(const Eigen::MatrixXd& x);

}  // namespace secran::conic

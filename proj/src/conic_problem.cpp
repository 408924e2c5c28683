// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/conic/problem.hpp"

#include <ostream>
#include <stdexcept>

#include "secran/conic/solver.hpp"

namespace secran::conic {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::NumericalProblem: return "numerical_problem";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

double Solution::dual(const std::string& tag) const {
  auto it = ineq_duals.find(tag);
  if (it == ineq_duals.end()) throw std::out_of_range("no inequality dual tagged " + tag);
  return it->second;
}

const Eigen::MatrixXcd& Solution::dual_lmi(const std::string& tag) const {
  auto it = lmi_duals.find(tag);
  if (it == lmi_duals.end()) throw std::out_of_range("no LMI dual tagged " + tag);
  return it->second;
}

Eigen::MatrixXd embed_complex_psd(const Eigen::MatrixXcd& h, double herm_tol) {
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > herm_tol * scale)
    throw std::invalid_argument("embed_complex_psd: input not Hermitian");
  const int n = static_cast<int>(h.rows());
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

Eigen::MatrixXcd unembed_real(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows()) / 2;
  const Eigen::MatrixXd p = x.topLeftCorner(n, n);
  const Eigen::MatrixXd r = x.bottomRightCorner(n, n);
  const Eigen::MatrixXd q = x.topRightCorner(n, n);
  Eigen::MatrixXcd out(n, n);
  out.real() = 0.5 * (p + r);
  out.imag() = 0.5 * (q.transpose() - q);
  return out;
}

void Problem::check_tag(const std::string& tag) {
  if (tags_.count(tag)) throw std::invalid_argument("duplicate constraint tag: " + tag);
}

int Problem::add_var(const std::string& name) {
  var_names_.push_back(name.empty() ? "y" + std::to_string(n_vars_) : name);
  return n_vars_++;
}

MatVar Problem::add_herm_var(const std::string& tag, int n) {
  MatVar v;
  v.n = n;
  v.base = n_vars_;
  for (int p = 0; p < v.params(); ++p) add_var(tag + "[" + std::to_string(p) + "]");
  add_lmi(tag, matvar_expr(v));
  return v;
}

MatHandle Problem::add_scaled_matrix(const std::string& tag, const Eigen::MatrixXcd& direction) {
  const int s = add_var(tag + ".scale");
  add_ineq(tag, LinExpr::variable(s));
  return MatHandle::scaled(s, direction);
}

void Problem::add_ineq(const std::string& tag, const LinExpr& e) {
  check_tag(tag);
  tags_[tag] = static_cast<int>(ineqs_.size());
  LinExpr c = e;
  c.compact();
  ineqs_.push_back({tag, std::move(c)});
}

void Problem::add_lmi(const std::string& tag, const HermExpr& m) {
  check_tag(tag);
  if (m.hermitian_error() > 1e-9)
    throw std::invalid_argument("add_lmi: expression not Hermitian: " + tag);
  tags_[tag] = static_cast<int>(lmis_.size());
  lmis_.push_back({tag, m});
}

void Problem::set_objective_max(const LinExpr& e) {
  objective_ = e;
  objective_.compact();
}

std::vector<Problem::Residual> Problem::residuals(const Eigen::VectorXd& y) const {
  std::vector<Residual> out;
  out.reserve(ineqs_.size() + lmis_.size());
  for (const auto& q : ineqs_) out.push_back({q.tag, q.expr.eval(y)});
  for (const auto& l : lmis_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(l.expr.eval(y), Eigen::EigenvaluesOnly);
    out.push_back({l.tag, es.eigenvalues().minCoeff()});
  }
  return out;
}

double Problem::min_slack(const Eigen::VectorXd& y) const {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : residuals(y)) worst = std::min(worst, r.slack);
  return worst;
}

Solution Problem::solve(const SolveOptions& opts) const {
  CompiledProblem cp;
  cp.m = n_vars_;
  cp.b = Eigen::VectorXd::Zero(n_vars_);
  for (const auto& [v, c] : objective_.terms) cp.b(v) += c;
  cp.obj_scale = std::max(1.0, cp.b.cwiseAbs().maxCoeff());
  cp.b /= cp.obj_scale;

  cp.lp.reserve(ineqs_.size());
  for (const auto& q : ineqs_) {
    CompiledProblem::LpRow row;
    row.tag = q.tag;
    double mx = std::abs(q.expr.constant);
    for (const auto& [v, c] : q.expr.terms) mx = std::max(mx, std::abs(c));
    row.scale = 1.0 / std::max(1.0, mx);
    row.c0 = q.expr.constant * row.scale;
    for (const auto& [v, c] : q.expr.terms) row.coeffs.emplace_back(v, c * row.scale);
    cp.lp.push_back(std::move(row));
  }

  cp.blocks.reserve(lmis_.size());
  for (const auto& l : lmis_) {
    CompiledProblem::SdpBlock blk;
    blk.tag = l.tag;
    blk.embedded = !l.expr.is_real();
    double mx = l.expr.constant().cwiseAbs().maxCoeff();
    for (const auto& [v, c] : l.expr.coeffs()) mx = std::max(mx, c.cwiseAbs().maxCoeff());
    blk.scale = 1.0 / std::max(1.0, mx);
    if (blk.embedded) {
      blk.n = 2 * l.expr.dim();
      blk.f0 = blk.scale * embed_complex_psd(l.expr.constant(), 1e-7);
      for (const auto& [v, c] : l.expr.coeffs()) {
        blk.vars.push_back(v);
        blk.coeff_dense.push_back(blk.scale * embed_complex_psd(c, 1e-7));
      }
    } else {
      blk.n = l.expr.dim();
      blk.f0 = blk.scale * l.expr.constant().real();
      for (const auto& [v, c] : l.expr.coeffs()) {
        blk.vars.push_back(v);
        blk.coeff_dense.push_back(blk.scale * c.real());
      }
    }
    blk.coeff_sparse.resize(blk.coeff_dense.size());
    for (std::size_t t = 0; t < blk.coeff_dense.size(); ++t) {
      auto& trips = blk.coeff_sparse[t];
      const auto& d = blk.coeff_dense[t];
      for (int r = 0; r < d.rows(); ++r)
        for (int c = 0; c < d.cols(); ++c)
          if (d(r, c) != 0.0) trips.emplace_back(r, c, d(r, c));
    }
    cp.blocks.push_back(std::move(blk));
  }

  IpmResult ipm = ipm_solve(cp, opts);

  Solution sol;
  sol.status = ipm.status;
  sol.y = ipm.y;
  sol.stats = ipm.stats;
  sol.objective = objective_.eval(ipm.y);
  if (ipm.lp_x.size() == static_cast<Eigen::Index>(cp.lp.size()))
    for (std::size_t r = 0; r < cp.lp.size(); ++r)
      sol.ineq_duals[cp.lp[r].tag] = ipm.lp_x(static_cast<Eigen::Index>(r)) * cp.lp[r].scale *
                                     cp.obj_scale;
  for (std::size_t j = 0; j < cp.blocks.size() && j < ipm.sdp_x.size(); ++j) {
    const auto& blk = cp.blocks[j];
    if (blk.embedded)
      sol.lmi_duals[blk.tag] = 2.0 * unembed_real(ipm.sdp_x[j]) * blk.scale * cp.obj_scale;
    else
      sol.lmi_duals[blk.tag] =
          (ipm.sdp_x[j] * blk.scale * cp.obj_scale).cast<std::complex<double>>();
  }
  return sol;
}

void Problem::dump(std::ostream& os) const {
  os << "conic-problem vars=" << n_vars_ << " ineqs=" << ineqs_.size()
     << " lmis=" << lmis_.size() << "\n";
  os << "objective(max):";
  for (const auto& [v, c] : objective_.terms) os << " " << c << "*y" << v;
  os << " + " << objective_.constant << "\n";
  for (const auto& q : ineqs_) {
    os << "ineq " << q.tag << ": " << q.expr.constant;
    for (const auto& [v, c] : q.expr.terms) os << " + " << c << "*y" << v;
    os << " >= 0\n";
  }
  for (const auto& l : lmis_) {
    os << "lmi " << l.tag << " dim=" << l.expr.dim() << "\n";
    auto dump_mat = [&os](const std::string& name, const Eigen::MatrixXcd& m) {
      os << "  " << name << ":";
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
          if (m(r, c) != cxd(0.0, 0.0))
            os << " (" << r << "," << c << "," << m(r, c).real() << "," << m(r, c).imag() << ")";
      os << "\n";
    };
    dump_mat("const", l.expr.constant());
    for (const auto& [v, c] : l.expr.coeffs()) dump_mat("y" + std::to_string(v), c);
  }
}

}  // namespace secran::conic

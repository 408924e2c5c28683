// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/conic/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace secran::conic {

void LinExpr::compact() {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, double>> out;
  for (const auto& [v, c] : terms) {
    if (!out.empty() && out.back().first == v)
      out.back().second += c;
    else
      out.emplace_back(v, c);
  }
  terms = std::move(out);
}

void HermExpr::add_term(int var, const Eigen::MatrixXcd& c) {
  auto it = coeffs_.find(var);
  if (it == coeffs_.end())
    coeffs_.emplace(var, c);
  else
    it->second += c;
}

void HermExpr::add_entry(int r, int c, const CxAffine& e) {
  if (r == c) {
    constant_(r, r) += cxd(e.constant.real(), 0.0);
    for (const auto& [v, coeff] : e.terms) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
      m(r, r) = cxd(coeff.real(), 0.0);
      add_term(v, m);
    }
    return;
  }
  constant_(r, c) += e.constant;
  constant_(c, r) += std::conj(e.constant);
  for (const auto& [v, coeff] : e.terms) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
    m(r, c) = coeff;
    m(c, r) = std::conj(coeff);
    add_term(v, m);
  }
}

void HermExpr::add_block(int r0, const HermExpr& sub) {
  const int k = sub.dim();
  constant_.block(r0, r0, k, k) += sub.constant();
  for (const auto& [v, c] : sub.coeffs()) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
    m.block(r0, r0, k, k) = c;
    add_term(v, m);
  }
}

void HermExpr::add_constant_block(int r0, const Eigen::MatrixXcd& a) {
  constant_.block(r0, r0, a.rows(), a.cols()) += a;
}

void HermExpr::add_term_block(int r0, int var, const Eigen::MatrixXcd& c) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  m.block(r0, r0, c.rows(), c.cols()) = c;
  add_term(var, m);
}

HermExpr& HermExpr::operator+=(const HermExpr& o) {
  constant_ += o.constant_;
  for (const auto& [v, c] : o.coeffs_) add_term(v, c);
  return *this;
}

bool HermExpr::is_real(double tol) const {
  auto real_mat = [&](const Eigen::MatrixXcd& m) {
    return m.imag().cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
  };
  if (!real_mat(constant_)) return false;
  for (const auto& [v, c] : coeffs_)
    if (!real_mat(c)) return false;
  return true;
}

double HermExpr::hermitian_error() const {
  auto err = [](const Eigen::MatrixXcd& m) {
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() / scale;
  };
  double worst = err(constant_);
  for (const auto& [v, c] : coeffs_) worst = std::max(worst, err(c));
  return worst;
}

Eigen::MatrixXcd HermExpr::eval(const Eigen::VectorXd& y) const {
  Eigen::MatrixXcd m = constant_;
  for (const auto& [v, c] : coeffs_) m += y(v) * c;
  return m;
}

Eigen::MatrixXcd matvar_basis(const MatVar& v, int p) {
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(v.n, v.n);
  if (p < v.n) {
    b(p, p) = 1.0;
    return b;
  }
  int q = p - v.n;
  const int pair = q / 2;
  const bool imag_part = (q % 2) == 1;
  // Row-major enumeration of pairs i<j.
  int idx = 0;
  for (int i = 0; i < v.n; ++i)
    for (int j = i + 1; j < v.n; ++j, ++idx)
      if (idx == pair) {
        if (imag_part) {
          b(i, j) = cxd(0.0, 1.0);
          b(j, i) = cxd(0.0, -1.0);
        } else {
          b(i, j) = 1.0;
          b(j, i) = 1.0;
        }
        return b;
      }
  throw std::out_of_range("matvar_basis: parameter index out of range");
}

LinExpr tr_expr(const Eigen::MatrixXcd& a, const MatVar& v) {
  LinExpr e;
  for (int i = 0; i < v.n; ++i) e.add(v.base + i, a(i, i).real());
  int p = v.n;
  for (int i = 0; i < v.n; ++i)
    for (int j = i + 1; j < v.n; ++j) {
      // Tr(A * (E_ij + E_ji)) = 2 Re A_ij; Tr(A * i(E_ij - E_ji)) = 2 Im A_ij.
      e.add(v.base + p++, 2.0 * a(i, j).real());
      e.add(v.base + p++, 2.0 * a(i, j).imag());
    }
  return e;
}

LinExpr diag_expr(const MatVar& v, int d) { return LinExpr::variable(v.base + d); }

CxAffine entry_expr(const MatVar& v, int r, int c) {
  CxAffine e;
  if (r == c) {
    e.add(v.base + r, 1.0);
    return e;
  }
  const bool upper = r < c;
  const int i = upper ? r : c;
  const int j = upper ? c : r;
  int pair = 0;
  for (int a = 0; a < i; ++a) pair += v.n - a - 1;
  pair += j - i - 1;
  const int re_var = v.base + v.n + 2 * pair;
  e.add(re_var, 1.0);
  e.add(re_var + 1, upper ? cxd(0.0, 1.0) : cxd(0.0, -1.0));
  return e;
}

HermExpr matvar_expr(const MatVar& v) {
  HermExpr e(v.n);
  for (int p = 0; p < v.params(); ++p) e.add_term(v.base + p, matvar_basis(v, p));
  return e;
}

HermExpr congruence_expr(const Eigen::MatrixXcd& f, const MatVar& v) {
  HermExpr e(static_cast<int>(f.rows()));
  for (int p = 0; p < v.params(); ++p)
    e.add_term(v.base + p, f * matvar_basis(v, p) * f.adjoint());
  return e;
}

Eigen::MatrixXcd matvar_value(const MatVar& v, const Eigen::VectorXd& y) {
  Eigen::MatrixXcd m(v.n, v.n);
  for (int i = 0; i < v.n; ++i) m(i, i) = y(v.base + i);
  int p = v.n;
  for (int i = 0; i < v.n; ++i)
    for (int j = i + 1; j < v.n; ++j) {
      const double re = y(v.base + p++);
      const double im = y(v.base + p++);
      m(i, j) = cxd(re, im);
      m(j, i) = cxd(re, -im);
    }
  return m;
}

MatHandle MatHandle::full(const MatVar& v) {
  MatHandle h;
  h.full_ = v;
  return h;
}

MatHandle MatHandle::scaled(int scalar_var, const Eigen::MatrixXcd& direction) {
  MatHandle h;
  h.scale_var_ = scalar_var;
  h.direction_ = direction;
  return h;
}

int MatHandle::dim() const {
  return is_full() ? full_.n : static_cast<int>(direction_.rows());
}

LinExpr MatHandle::tr(const Eigen::MatrixXcd& a) const {
  if (is_full()) return tr_expr(a, full_);
  return LinExpr::variable(scale_var_, (a * direction_).trace().real());
}

LinExpr MatHandle::trace() const {
  if (is_full()) {
    LinExpr e;
    for (int i = 0; i < full_.n; ++i) e.add(full_.base + i, 1.0);
    return e;
  }
  return LinExpr::variable(scale_var_, direction_.trace().real());
}

LinExpr MatHandle::diag(int d) const {
  if (is_full()) return diag_expr(full_, d);
  return LinExpr::variable(scale_var_, direction_(d, d).real());
}

HermExpr MatHandle::expr() const {
  if (is_full()) return matvar_expr(full_);
  HermExpr e(dim());
  e.add_term(scale_var_, direction_);
  return e;
}

HermExpr MatHandle::congruence(const Eigen::MatrixXcd& f) const {
  if (is_full()) return congruence_expr(f, full_);
  HermExpr e(static_cast<int>(f.rows()));
  e.add_term(scale_var_, f * direction_ * f.adjoint());
  return e;
}

std::vector<CxAffine> MatHandle::sandwich_row(const Eigen::RowVectorXcd& g,
                                              const Eigen::MatrixXcd& f_adj) const {
  const int p = static_cast<int>(f_adj.cols());
  std::vector<CxAffine> row(static_cast<std::size_t>(p));
  if (is_full()) {
    for (int t = 0; t < full_.params(); ++t) {
      const Eigen::RowVectorXcd r = (g * matvar_basis(full_, t)) * f_adj;
      for (int j = 0; j < p; ++j)
        if (r(j) != cxd(0.0, 0.0)) row[static_cast<std::size_t>(j)].add(full_.base + t, r(j));
    }
  } else {
    const Eigen::RowVectorXcd r = (g * direction_) * f_adj;
    for (int j = 0; j < p; ++j) row[static_cast<std::size_t>(j)].add(scale_var_, r(j));
  }
  return row;
}

Eigen::MatrixXcd MatHandle::value(const Eigen::VectorXd& y) const {
  if (is_full()) return matvar_value(full_, y);
  return y(scale_var_) * direction_;
}

}  // namespace secran::conic

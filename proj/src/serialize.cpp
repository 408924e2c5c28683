// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/serialize.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace secran {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_vec(std::ostream& os, const std::string& name, int index,
               const Eigen::RowVectorXcd& v) {
  os << "vec " << name << " " << index << " " << v.size() << "\n";
  for (int i = 0; i < v.size(); ++i) os << (i ? " " : "") << fmt(v(i).real());
  os << "\n";
  for (int i = 0; i < v.size(); ++i) os << (i ? " " : "") << fmt(v(i).imag());
  os << "\n";
}

struct NamedVec {
  std::string name;
  int index;
  Eigen::RowVectorXcd data;
};

NamedVec read_vec(std::istream& is) {
  std::string tag;
  NamedVec nv;
  int len = 0;
  if (!(is >> tag >> nv.name >> nv.index >> len) || tag != "vec")
    throw std::runtime_error("serialize: expected 'vec' record");
  nv.data.resize(len);
  std::vector<double> re(static_cast<std::size_t>(len)), im(static_cast<std::size_t>(len));
  for (auto& x : re)
    if (!(is >> x)) throw std::runtime_error("serialize: truncated real part");
  for (auto& x : im)
    if (!(is >> x)) throw std::runtime_error("serialize: truncated imag part");
  for (int i = 0; i < len; ++i)
    nv.data(i) = {re[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i)]};
  return nv;
}

void write_matrix(std::ostream& os, const std::string& name, int index,
                  const Eigen::MatrixXcd& m) {
  os << "mat " << name << " " << index << " " << m.rows() << " " << m.cols() << "\n";
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c)
      os << (c ? " " : "") << fmt(m(r, c).real()) << " " << fmt(m(r, c).imag());
    os << "\n";
  }
}

Eigen::MatrixXcd read_matrix(std::istream& is, std::string& name, int& index) {
  std::string tag;
  int rows = 0, cols = 0;
  if (!(is >> tag >> name >> index >> rows >> cols) || tag != "mat")
    throw std::runtime_error("serialize: expected 'mat' record");
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double re, im;
      if (!(is >> re >> im)) throw std::runtime_error("serialize: truncated matrix");
      m(r, c) = {re, im};
    }
  return m;
}

}  // namespace

void write_channels(std::ostream& os, const ChannelSet& cs) {
  os << "secran-channels v1\n";
  os << "counts " << cs.g.size() << " " << cs.h.size() << " " << cs.he_true.size() << "\n";
  for (std::size_t l = 0; l < cs.g.size(); ++l) write_vec(os, "g", static_cast<int>(l), cs.g[l]);
  for (std::size_t k = 0; k < cs.h.size(); ++k) write_vec(os, "h", static_cast<int>(k), cs.h[k]);
  for (std::size_t z = 0; z < cs.he_true.size(); ++z)
    write_vec(os, "he_true", static_cast<int>(z), cs.he_true[z]);
  for (std::size_t z = 0; z < cs.he_est.size(); ++z)
    write_vec(os, "he_est", static_cast<int>(z), cs.he_est[z]);
}

ChannelSet read_channels(std::istream& is) {
  std::string magic, version, counts_tag;
  std::size_t nl = 0, nk = 0, nz = 0;
  if (!(is >> magic >> version >> counts_tag >> nl >> nk >> nz) || magic != "secran-channels" ||
      counts_tag != "counts")
    throw std::runtime_error("serialize: bad channel header");
  ChannelSet cs;
  auto read_group = [&](const char* name, std::size_t count,
                        std::vector<Eigen::RowVectorXcd>& out) {
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      NamedVec nv = read_vec(is);
      if (nv.name != name) throw std::runtime_error("serialize: unexpected vector name");
      out[static_cast<std::size_t>(nv.index)] = nv.data;
    }
  };
  read_group("g", nl, cs.g);
  read_group("h", nk, cs.h);
  read_group("he_true", nz, cs.he_true);
  read_group("he_est", nz, cs.he_est);
  return cs;
}

void write_analog_bf(std::ostream& os, const AnalogBeamformer& bf) {
  os << "secran-analogbf v1\n";
  os << "counts " << bf.f.size() << " " << bf.n_bs_antennas << "\n";
  for (std::size_t l = 0; l < bf.f.size(); ++l)
    write_vec(os, "f", static_cast<int>(l), bf.f[l].transpose());
}

AnalogBeamformer read_analog_bf(std::istream& is) {
  std::string magic, version, counts_tag;
  std::size_t nl = 0;
  int m = 0;
  if (!(is >> magic >> version >> counts_tag >> nl >> m) || magic != "secran-analogbf")
    throw std::runtime_error("serialize: bad analog BF header");
  AnalogBeamformer bf;
  bf.n_bs_antennas = m;
  bf.f.resize(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    NamedVec nv = read_vec(is);
    bf.f[static_cast<std::size_t>(nv.index)] = nv.data.transpose();
  }
  return bf;
}

void write_solution(std::ostream& os, const BFSolution& sol) {
  os << "secran-solution v1\n";
  os << "counts " << sol.Vk.size() << " " << (sol.v0 ? 1 : 0) << " " << sol.vk.size() << "\n";
  write_matrix(os, "V0", 0, sol.V0);
  for (std::size_t k = 0; k < sol.Vk.size(); ++k)
    write_matrix(os, "Vk", static_cast<int>(k), sol.Vk[k]);
  write_matrix(os, "Lambda", 0, sol.Lambda);
  if (sol.v0) write_vec(os, "v0", 0, sol.v0->transpose());
  for (std::size_t k = 0; k < sol.vk.size(); ++k)
    write_vec(os, "vk", static_cast<int>(k), sol.vk[k].transpose());
}

BFSolution read_solution(std::istream& is) {
  std::string magic, version, counts_tag;
  std::size_t k_count = 0, has_v0 = 0, vk_count = 0;
  if (!(is >> magic >> version >> counts_tag >> k_count >> has_v0 >> vk_count) ||
      magic != "secran-solution")
    throw std::runtime_error("serialize: bad solution header");
  BFSolution sol;
  std::string name;
  int index;
  sol.V0 = read_matrix(is, name, index);
  sol.Vk.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    Eigen::MatrixXcd m = read_matrix(is, name, index);
    sol.Vk[static_cast<std::size_t>(index)] = m;
  }
  sol.Lambda = read_matrix(is, name, index);
  if (has_v0) sol.v0 = read_vec(is).data.transpose();
  sol.vk.resize(vk_count);
  for (std::size_t k = 0; k < vk_count; ++k) {
    NamedVec nv = read_vec(is);
    sol.vk[static_cast<std::size_t>(nv.index)] = nv.data.transpose();
  }
  return sol;
}

std::string rate_report_csv_header() {
  return "fronthaul_min,sum_access,sum_secrecy,min_secrecy,share_sum";
}

std::string rate_report_csv_row(const RateReport& rep) {
  double min_sec = rep.secrecy.empty() ? 0.0 : rep.secrecy[0];
  for (double s : rep.secrecy) min_sec = std::min(min_sec, s);
  double share_sum = 0.0;
  for (double t : rep.time_shares) share_sum += t;
  std::ostringstream os;
  os << fmt(rep.fronthaul_min) << "," << fmt(rep.sum_access()) << "," << fmt(rep.sum_secrecy())
     << "," << fmt(min_sec) << "," << fmt(share_sum);
  return os.str();
}

std::string rate_report_json(const RateReport& rep) {
  nlohmann::json j;
  j["fronthaul_per_bs"] = rep.fronthaul_per_bs;
  j["fronthaul_min"] = rep.fronthaul_min;
  j["access"] = rep.access;
  j["eavesdrop"] = rep.eavesdrop;
  j["secrecy"] = rep.secrecy;
  j["time_shares"] = rep.time_shares;
  return j.dump(2);
}

}  // namespace secran

// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace secran {

double SystemConfig::bs_budget(int l) const {
  if (p_bs_per.empty()) return p_bs_total / static_cast<double>(n_bs);
  return p_bs_per.at(static_cast<std::size_t>(l));
}

double SystemConfig::csi_error(int z) const {
  if (csi_error_ratio.empty()) return 0.0;
  if (csi_error_ratio.size() == 1) return csi_error_ratio[0];
  return csi_error_ratio.at(static_cast<std::size_t>(z));
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SystemConfig: " + msg); };
  if (n_cp_antennas < 1 || n_bs_antennas < 1 || n_bs < 1 || n_users < 1 || n_paths < 1 ||
      phase_bits < 1)
    fail("all counts must be >= 1");
  if (n_eves < 0) fail("n_eves must be >= 0");
  if (!(bw_mmwave > 0) || !(bw_microwave > 0)) fail("bandwidths must be > 0");
  if (!(noise_psd > 0)) fail("noise_psd must be > 0");
  if (!(p_bs_total > 0) || !(p_cp > 0)) fail("power budgets must be > 0");
  if (!p_bs_per.empty()) {
    if (static_cast<int>(p_bs_per.size()) != n_bs) fail("p_bs_per must have n_bs entries");
    for (double p : p_bs_per)
      if (!(p > 0)) fail("per-BS budgets must be > 0");
  }
  if (!(cp_distance > 0) || !(cluster_radius > 0)) fail("distances must be > 0");
  if (shadowing_sigma < 0) fail("shadowing_sigma must be >= 0");
  if (!csi_error_ratio.empty() && csi_error_ratio.size() != 1 &&
      static_cast<int>(csi_error_ratio.size()) != n_eves)
    fail("csi_error_ratio must be scalar or have n_eves entries");
  for (double s : csi_error_ratio)
    if (s < 0) fail("csi_error_ratio entries must be >= 0");
  const double eta_v = eta();
  if (!(eta_v > 0) || !std::isfinite(eta_v)) fail("eta = W_mc/W_mm must be finite and positive");
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(v[i]);
  }
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string SystemConfig::to_text() const {
  std::ostringstream os;
  os << "n_cp_antennas = " << n_cp_antennas << "\n";
  os << "n_bs_antennas = " << n_bs_antennas << "\n";
  os << "n_bs = " << n_bs << "\n";
  os << "n_users = " << n_users << "\n";
  os << "n_eves = " << n_eves << "\n";
  os << "n_paths = " << n_paths << "\n";
  os << "phase_bits = " << phase_bits << "\n";
  os << "bw_mmwave = " << fmt_double(bw_mmwave) << "\n";
  os << "bw_microwave = " << fmt_double(bw_microwave) << "\n";
  os << "noise_psd = " << fmt_double(noise_psd) << "\n";
  os << "p_bs_total = " << fmt_double(p_bs_total) << "\n";
  if (!p_bs_per.empty()) os << "p_bs_per = " << fmt_list(p_bs_per) << "\n";
  os << "p_cp = " << fmt_double(p_cp) << "\n";
  os << "cp_distance = " << fmt_double(cp_distance) << "\n";
  os << "cluster_radius = " << fmt_double(cluster_radius) << "\n";
  os << "shadowing_sigma = " << fmt_double(shadowing_sigma) << "\n";
  if (!csi_error_ratio.empty()) os << "csi_error_ratio = " << fmt_list(csi_error_ratio) << "\n";
  os << "rng_seed = " << rng_seed << "\n";
  return os.str();
}

bool apply_config_key(SystemConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n_cp_antennas") cfg.n_cp_antennas = std::stoi(value);
  else if (key == "n_bs_antennas") cfg.n_bs_antennas = std::stoi(value);
  else if (key == "n_bs") cfg.n_bs = std::stoi(value);
  else if (key == "n_users") cfg.n_users = std::stoi(value);
  else if (key == "n_eves") cfg.n_eves = std::stoi(value);
  else if (key == "n_paths") cfg.n_paths = std::stoi(value);
  else if (key == "phase_bits") cfg.phase_bits = std::stoi(value);
  else if (key == "bw_mmwave") cfg.bw_mmwave = std::stod(value);
  else if (key == "bw_microwave") cfg.bw_microwave = std::stod(value);
  else if (key == "noise_psd") cfg.noise_psd = std::stod(value);
  else if (key == "p_bs_total") cfg.p_bs_total = std::stod(value);
  else if (key == "p_bs_per") cfg.p_bs_per = parse_list(value);
  else if (key == "p_cp") cfg.p_cp = std::stod(value);
  else if (key == "cp_distance") cfg.cp_distance = std::stod(value);
  else if (key == "cluster_radius") cfg.cluster_radius = std::stod(value);
  else if (key == "shadowing_sigma") cfg.shadowing_sigma = std::stod(value);
  else if (key == "csi_error_ratio") cfg.csi_error_ratio = parse_list(value);
  else if (key == "rng_seed") cfg.rng_seed = std::stoull(value);
  else return false;
  return true;
}

SystemConfig SystemConfig::from_text(const std::string& text) {
  SystemConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config: bad line: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!apply_config_key(cfg, key, value))
      throw std::invalid_argument("config: unknown key: " + key);
  }
  cfg.validate();
  return cfg;
}

SystemConfig SystemConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

std::uint64_t SystemConfig::hash() const {
  const std::string text = to_text();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Topology Topology::generate(const SystemConfig& cfg, Rng& rng) {
  Topology topo;
  topo.cp_distance = cfg.cp_distance;
  auto draw_disk = [&](int count, std::vector<Eigen::Vector2d>& out) {
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      // Uniform over the disk: radius ~ R*sqrt(u).
      const double r = cfg.cluster_radius * std::sqrt(rng.uniform());
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      out.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
  };
  draw_disk(cfg.n_bs, topo.bs_positions);
  draw_disk(cfg.n_users, topo.user_positions);
  draw_disk(cfg.n_eves, topo.eve_positions);
  return topo;
}

double Topology::cp_to_bs_distance(int l) const {
  const Eigen::Vector2d cp(-cp_distance, 0.0);
  return (bs_positions.at(static_cast<std::size_t>(l)) - cp).norm();
}

double Topology::bs_to_user_distance(int l, int k) const {
  return (bs_positions.at(static_cast<std::size_t>(l)) -
          user_positions.at(static_cast<std::size_t>(k)))
      .norm();
}

double Topology::bs_to_eve_distance(int l, int z) const {
  return (bs_positions.at(static_cast<std::size_t>(l)) -
          eve_positions.at(static_cast<std::size_t>(z)))
      .norm();
}

}  // namespace secran

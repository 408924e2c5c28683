// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "secran/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace secran::harness {

void ExperimentSpec::validate() const {
  static const char* known[] = {"convergence", "sweep_pbs",  "sweep_pcp",
                                "sweep_users", "sweep_eves", "sweep_sigma"};
  bool ok = false;
  for (const char* k : known) ok = ok || experiment == k;
  if (!ok) throw std::invalid_argument("experiment: unknown id " + experiment);
  if (grid.empty()) throw std::invalid_argument("experiment: empty grid");
  if (n_trials < 1) throw std::invalid_argument("experiment: n_trials >= 1 required");
  if (variants.empty()) throw std::invalid_argument("experiment: no variants");
  base.validate();
}

ExperimentSpec ExperimentSpec::from_text(const std::string& text) {
  ExperimentSpec spec;
  std::istringstream is(text);
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  };
  auto split_list = [&](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  };
  while (std::getline(is, line)) {
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("experiment: bad line: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "experiment") {
      spec.experiment = value;
    } else if (key == "grid") {
      spec.grid.clear();
      for (const auto& v : split_list(value)) spec.grid.push_back(std::stod(v));
    } else if (key == "n_trials") {
      spec.n_trials = std::stoi(value);
    } else if (key == "variants") {
      spec.variants.clear();
      for (const auto& v : split_list(value)) spec.variants.push_back(srm::variant_from_string(v));
    } else if (key == "output_csv") {
      spec.output_csv = value;
    } else if (key == "output_json") {
      spec.output_json = value;
    } else if (key == "master_seed") {
      spec.master_seed = std::stoull(value);
    } else if (key == "threads") {
      spec.threads = std::stoi(value);
    } else if (key == "n_candidates") {
      spec.n_candidates = std::stoi(value);
    } else if (!apply_config_key(spec.base, key, value)) {
      throw std::invalid_argument("experiment: unknown key " + key);
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("experiment: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

SystemConfig apply_grid_value(const ExperimentSpec& spec, double value) {
  SystemConfig cfg = spec.base;
  if (spec.experiment == "sweep_pbs") {
    cfg.p_bs_total = value;
    cfg.p_bs_per.clear();
  } else if (spec.experiment == "sweep_pcp") {
    cfg.p_cp = value;
  } else if (spec.experiment == "sweep_users") {
    cfg.n_users = static_cast<int>(std::lround(value));
  } else if (spec.experiment == "sweep_eves") {
    cfg.n_eves = static_cast<int>(std::lround(value));
    if (!cfg.csi_error_ratio.empty() && cfg.csi_error_ratio.size() > 1)
      cfg.csi_error_ratio.resize(1);
  } else if (spec.experiment == "sweep_sigma") {
    cfg.csi_error_ratio = {value};
  }
  cfg.validate();
  return cfg;
}

TrialOutcome run_trial(const SystemConfig& cfg, srm::Variant variant, std::uint64_t seed,
                       int n_candidates, const srm::SrmOptions& opts) {
  Rng rng(seed);
  const Topology topo = Topology::generate(cfg, rng);
  const ChannelSet channels = ChannelSet::generate(cfg, topo, rng);
  const AnalogBeamformer bf = design_analog_bf(channels, cfg);

  TrialOutcome out;
  out.relaxed = srm::solve_srm(variant, channels, bf, cfg, opts);
  Rng rec_rng(derive_seed(seed, {0x5ecull}));
  out.recovered = rankrec::recover_rank_one(out.relaxed, variant, rec_rng, n_candidates, opts);
  out.report_true = secrecy_rates(out.recovered.solution, channels, bf, cfg, false);
  out.report_est = secrecy_rates(out.recovered.solution, channels, bf, cfg, true);
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

}  // namespace

std::string ExperimentResult::csv() const {
  std::string out =
      "grid_value,trial,variant,status,secrecy_true_bits,secrecy_est_bits,surrogate_bits,"
      "iterations,converged,rank_v0,max_rank_vk,v0_path,power_residual,fronthaul_slack_bits,"
      "config_hash\n";
  for (const auto& r : rows) {
    std::ostringstream os;
    os << fmt(r.grid_value) << "," << r.trial << "," << srm::to_string(r.variant) << ","
       << (r.status == "ok" ? "ok" : "error") << "," << fmt(r.secrecy_true_bits) << ","
       << fmt(r.secrecy_est_bits) << "," << fmt(r.surrogate_bits) << "," << r.iterations << ","
       << (r.converged ? 1 : 0) << "," << r.rank_v0 << "," << r.max_rank_vk << "," << r.v0_path
       << "," << fmt(r.power_residual) << "," << fmt(r.fronthaul_slack_bits) << ","
       << r.config_hash << "\n";
    out += os.str();
  }
  return out;
}

std::string ExperimentResult::trace_csv() const {
  std::string out = "grid_value,trial,variant,iteration,surrogate_bits,true_secrecy_bits,"
                    "max_violation,ipm_iterations,refinements\n";
  for (const auto& t : trace_rows) {
    std::ostringstream os;
    os << fmt(t.grid_value) << "," << t.trial << "," << srm::to_string(t.variant) << ","
       << t.record.iteration << "," << fmt(t.record.surrogate_bits) << ","
       << fmt(t.record.true_secrecy_bits) << "," << fmt(t.record.max_violation) << ","
       << t.record.ipm_iterations << "," << t.record.refinements << "\n";
    out += os.str();
  }
  return out;
}

std::string ExperimentResult::summary_json(const ExperimentSpec& spec) const {
  // Aggregate mean and 95% CI per (grid value, variant).
  struct Acc {
    int n = 0, errors = 0;
    double sum = 0, sum2 = 0;
  };
  std::map<std::pair<double, std::string>, Acc> acc;
  for (const auto& r : rows) {
    auto& a = acc[{r.grid_value, srm::to_string(r.variant)}];
    if (r.status != "ok") {
      ++a.errors;
      continue;
    }
    ++a.n;
    a.sum += r.secrecy_true_bits;
    a.sum2 += r.secrecy_true_bits * r.secrecy_true_bits;
  }
  nlohmann::json j;
  j["experiment"] = spec.experiment;
  j["n_trials"] = spec.n_trials;
  j["master_seed"] = spec.master_seed;
  j["config_hash"] = spec.base.hash();
  j["points"] = nlohmann::json::array();
  for (const auto& [key, a] : acc) {
    nlohmann::json p;
    p["grid_value"] = key.first;
    p["variant"] = key.second;
    p["n_ok"] = a.n;
    p["n_error"] = a.errors;
    const double mean = a.n ? a.sum / a.n : 0.0;
    const double var = a.n > 1 ? std::max(0.0, (a.sum2 - a.sum * a.sum / a.n) / (a.n - 1)) : 0.0;
    const double ci = a.n > 1 ? 1.96 * std::sqrt(var / a.n) : 0.0;
    p["mean_secrecy_bits"] = mean;
    p["ci95_bits"] = ci;
    j["points"].push_back(p);
  }
  return j.dump(2);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    int grid_index;
    int trial;
  };
  std::vector<Task> tasks;
  for (int g = 0; g < static_cast<int>(spec.grid.size()); ++g)
    for (int t = 0; t < spec.n_trials; ++t) tasks.push_back({g, t});

  const bool keep_traces = spec.experiment == "convergence";
  std::vector<std::vector<TrialRow>> rows(tasks.size());
  std::vector<std::vector<TraceRow>> traces(tasks.size());

  auto worker_fn = [&](int task_index) {
    const Task& task = tasks[static_cast<std::size_t>(task_index)];
    const double gv = spec.grid[static_cast<std::size_t>(task.grid_index)];
    SystemConfig cfg = apply_grid_value(spec, gv);
    const std::uint64_t seed =
        derive_seed(spec.master_seed, {static_cast<std::uint64_t>(task.grid_index),
                                       static_cast<std::uint64_t>(task.trial)});
    for (srm::Variant variant : spec.variants) {
      TrialRow row;
      row.grid_value = gv;
      row.trial = task.trial;
      row.variant = variant;
      row.config_hash = cfg.hash();
      const auto t0 = std::chrono::steady_clock::now();
      try {
        TrialOutcome out = run_trial(cfg, variant, seed, spec.n_candidates);
        row.secrecy_true_bits = out.report_true.sum_secrecy();
        row.secrecy_est_bits = out.report_est.sum_secrecy();
        row.surrogate_bits = out.relaxed.surrogate_bits;
        row.iterations = static_cast<int>(out.relaxed.trace.iterations.size());
        row.converged = out.relaxed.converged;
        row.rank_v0 = out.recovered.report.rank_v0_after;
        row.max_rank_vk = 0;
        for (int r : out.recovered.report.rank_vk_after)
          row.max_rank_vk = std::max(row.max_rank_vk, r);
        row.v0_path = out.recovered.report.v0_path;
        // Power residual relative to the binding budget(s).
        if (variant == srm::Variant::PerBsPower) {
          for (int l = 0; l < cfg.n_bs; ++l) {
            double used_l = out.recovered.solution.Lambda(l, l).real();
            for (const auto& v : out.recovered.solution.Vk) used_l += v(l, l).real();
            row.power_residual = std::max(
                row.power_residual, (used_l - cfg.bs_budget(l)) / cfg.bs_budget(l));
          }
          row.power_residual = std::max(row.power_residual, 0.0);
        } else {
          double used = out.recovered.solution.Lambda.trace().real();
          for (const auto& v : out.recovered.solution.Vk) used += v.trace().real();
          row.power_residual = std::max(0.0, used - cfg.p_bs_total) / cfg.p_bs_total;
        }
        row.fronthaul_slack_bits =
            out.report_est.fronthaul_min - out.report_est.sum_access();
        if (keep_traces)
          for (const auto& rec : out.relaxed.trace.iterations)
            traces[static_cast<std::size_t>(task_index)].push_back(
                {gv, task.trial, variant, rec});
      } catch (const std::exception& e) {
        row.status = e.what();
      }
      row.elapsed_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rows[static_cast<std::size_t>(task_index)].push_back(row);
    }
  };

  int n_threads = spec.threads > 0 ? spec.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(tasks.size())));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < n_threads; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= static_cast<int>(tasks.size())) return;
        worker_fn(i);
      }
    });
  for (auto& th : pool) th.join();

  ExperimentResult result;
  for (auto& r : rows) result.rows.insert(result.rows.end(), r.begin(), r.end());
  for (auto& t : traces) result.trace_rows.insert(result.trace_rows.end(), t.begin(), t.end());
  std::sort(result.rows.begin(), result.rows.end(), [](const TrialRow& a, const TrialRow& b) {
    if (a.grid_value != b.grid_value) return a.grid_value < b.grid_value;
    if (a.trial != b.trial) return a.trial < b.trial;
    return static_cast<int>(a.variant) < static_cast<int>(b.variant);
  });
  std::sort(result.trace_rows.begin(), result.trace_rows.end(),
            [](const TraceRow& a, const TraceRow& b) {
              if (a.grid_value != b.grid_value) return a.grid_value < b.grid_value;
              if (a.trial != b.trial) return a.trial < b.trial;
              if (a.variant != b.variant) return static_cast<int>(a.variant) < static_cast<int>(b.variant);
              return a.record.iteration < b.record.iteration;
            });

  if (!spec.output_csv.empty()) {
    std::ofstream out(spec.output_csv);
    if (!out) throw std::runtime_error("cannot write " + spec.output_csv);
    out << result.csv();
    if (keep_traces) {
      std::ofstream tout(spec.output_csv + ".trace.csv");
      tout << result.trace_csv();
    }
  }
  if (!spec.output_json.empty()) {
    std::ofstream out(spec.output_json);
    if (!out) throw std::runtime_error("cannot write " + spec.output_json);
    out << result.summary_json(spec);
  }
  return result;
}

}  // namespace secran::harness

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "jrjs/error.hpp"
#include "jrjs/model.hpp"
#include "jrjs/nulljam.hpp"
#include "jrjs/selection.hpp"

namespace jrjs::harness {

enum class Experiment { RdSweep, PowerSweep, MSweep, PowerRatioSweep, EeDiagnostic };

inline std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::RdSweep: return "rd_sweep";
    case Experiment::PowerSweep: return "power_sweep";
    case Experiment::MSweep: return "m_sweep";
    case Experiment::PowerRatioSweep: return "power_ratio_sweep";
    case Experiment::EeDiagnostic: return "ee_diagnostic";
  }
  return "?";
}

inline std::optional<Experiment> parse_experiment(std::string_view s) {
  for (auto e : {Experiment::RdSweep, Experiment::PowerSweep, Experiment::MSweep,
                 Experiment::PowerRatioSweep, Experiment::EeDiagnostic})
    if (to_string(e) == s) return e;
  return std::nullopt;
}

struct ExperimentConfig {
  Experiment experiment = Experiment::PowerSweep;
  std::int64_t trials = 100000;
  std::vector<int> m{10};
  std::vector<double> p_dbm{14.0};
  std::vector<double> rd;  // empty: follow rd_schedule
  std::vector<Scheme> schemes;
  std::uint64_t seed = 1;
  double noise_dbm = 0.0;
  double eps1 = 1.0;
  double eps2 = 1.0;
  double eps_sd = 0.05;
  unsigned threads = 0;  // 0: hardware concurrency
  std::string out_path;
};

/// Default scheme list per experiment.
inline std::vector<Scheme> default_schemes(Experiment e) {
  if (e == Experiment::PowerSweep) return {kAllSchemes.begin(), kAllSchemes.end()};
  if (e == Experiment::EeDiagnostic) return {};
  return {Scheme::FcsiPa, Scheme::PcsiPa};
}

/// One CSV record. Empty optionals are written as empty fields.
struct CsvRow {
  std::string experiment;
  std::string scheme;
  std::optional<int> m;
  std::optional<double> p_dbm;
  std::optional<double> rd;
  std::string sweep_var;
  std::optional<double> sweep_value;
  std::optional<double> mean_secrecy_rate;
  std::optional<double> stderr_;
  std::optional<double> mean_ps_ratio;
  std::optional<double> mean_pr_ratio;
  std::optional<double> outage_fraction;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "experiment,scheme,m,p_dbm,rd,sweep_var,sweep_value,mean_secrecy_rate,stderr,mean_ps_ratio,"
    "mean_pr_ratio,outage_fraction,trials,seed";

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }
inline std::string fmt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

/// Run body(chunk) for every chunk index on up to `threads` workers.
template <class Body>
void parallel_chunks(std::size_t chunks, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t c; (c = next.fetch_add(1)) < chunks;) body(c);
    });
  for (auto& th : pool) th.join();
}

inline constexpr std::int64_t kChunk = 2048;

}  // namespace detail

/// Running sums for one scheme at one sweep point.
struct SchemeStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  double ps_ratio = 0.0;
  double pr_ratio = 0.0;
  std::int64_t served = 0;
  std::int64_t outages = 0;
  std::int64_t n = 0;

  void add(const JrjsSolution& sol, double p_total) {
    sum += sol.realized_secrecy_rate;
    sum_sq += sol.realized_secrecy_rate * sol.realized_secrecy_rate;
    ++n;
    if (sol.outage) {
      ++outages;
    } else {
      ps_ratio += sol.allocation.p_s / p_total;
      pr_ratio += sol.allocation.p_r / p_total;
      ++served;
    }
  }

  void merge(const SchemeStats& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    ps_ratio += o.ps_ratio;
    pr_ratio += o.pr_ratio;
    served += o.served;
    outages += o.outages;
    n += o.n;
  }

  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }

  double stderr_of_mean() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * sum / nn) / (nn - 1.0));
    return std::sqrt(var / nn);
  }
};

/// Monte-Carlo statistics of every scheme over `trials` realizations at one operating
/// point. Trial t always sees the channel drawn from trial_rng(seed, t), so results do
/// not depend on thread count or scheduling.
inline std::vector<SchemeStats> simulate_point(const SystemParams& params, std::span<const Scheme> schemes,
                                               std::int64_t trials, unsigned threads) {
  const auto chunks = static_cast<std::size_t>((trials + detail::kChunk - 1) / detail::kChunk);
  std::vector<std::vector<SchemeStats>> partial(chunks, std::vector<SchemeStats>(schemes.size()));
  detail::parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::int64_t lo = static_cast<std::int64_t>(c) * detail::kChunk;
    const std::int64_t hi = std::min(trials, lo + detail::kChunk);
    auto& acc = partial[c];
    for (std::int64_t t = lo; t < hi; ++t) {
      auto rng = trial_rng(params.seed, static_cast<std::uint64_t>(t));
      const auto re = sample_realization(params, rng);
      const CandidateCache cache(re);
      for (std::size_t s = 0; s < schemes.size(); ++s)
        acc[s].add(run_scheme(schemes[s], cache, params), params.p_total);
    }
  });
  std::vector<SchemeStats> total(schemes.size());
  for (const auto& p : partial)
    for (std::size_t s = 0; s < schemes.size(); ++s) total[s].merge(p[s]);
  return total;
}

/// e_E = E[(eps2 - lambda) / (noise / P_z + lambda)] from paired samples.
inline double ee_estimate(std::span<const double> lambdas, std::span<const double> p_z, double eps2,
                          double noise) {
  if (lambdas.size() != p_z.size() || lambdas.empty())
    throw Error(ErrorCode::DimensionMismatch, "lambda and P_z sample counts differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) acc += (eps2 - lambdas[i]) / (noise / p_z[i] + lambdas[i]);
  return acc / static_cast<double>(lambdas.size());
}

struct EeStats {
  double lambda_mean = 0.0;
  double lambda_variance = 0.0;
  double ee = 0.0;
  double ee_stderr = 0.0;
};

/// Monte-Carlo e_E for M nodes (M - 1 jammers) at each budget in `p_totals`, with
/// P_z ~ U[0, P] per draw. Every budget sees the same channel draws. The leakage is that
/// of noise spread over the full null space of h_d, whose variance eps2^2 / (M - 2)
/// shrinks as M grows.
inline std::vector<EeStats> ee_point(int m, std::span<const double> p_totals, double noise, double eps2,
                                     std::uint64_t seed, std::int64_t draws, unsigned threads) {
  if (m < 3) throw Error(ErrorCode::Config, "ee_diagnostic needs M >= 3");
  const std::size_t np = p_totals.size();
  struct Acc {
    double l = 0, l2 = 0;
    std::vector<double> e, e2;
  };
  const auto chunks = static_cast<std::size_t>((draws + detail::kChunk - 1) / detail::kChunk);
  std::vector<Acc> partial(chunks, Acc{0, 0, std::vector<double>(np), std::vector<double>(np)});
  const auto jammers = static_cast<std::size_t>(m - 1);
  detail::parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::int64_t lo = static_cast<std::int64_t>(c) * detail::kChunk;
    const std::int64_t hi = std::min(draws, lo + detail::kChunk);
    std::vector<cplx> h_d(jammers), h_e(jammers);
    Acc& a = partial[c];
    for (std::int64_t t = lo; t < hi; ++t) {
      auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
      for (auto& h : h_d) h = std::conj(sample_cn(rng, 1.0));
      for (auto& h : h_e) h = std::conj(sample_cn(rng, eps2));
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const double lam = lambda_e_isotropic(h_d, h_e);
      a.l += lam;
      a.l2 += lam * lam;
      for (std::size_t k = 0; k < np; ++k) {
        const double pz = u * p_totals[k];
        const double e = pz > 0.0 ? (eps2 - lam) / (noise / pz + lam) : 0.0;
        a.e[k] += e;
        a.e2[k] += e * e;
      }
    }
  });
  Acc tot{0, 0, std::vector<double>(np), std::vector<double>(np)};
  for (const auto& a : partial) {
    tot.l += a.l;
    tot.l2 += a.l2;
    for (std::size_t k = 0; k < np; ++k) {
      tot.e[k] += a.e[k];
      tot.e2[k] += a.e2[k];
    }
  }
  const double n = static_cast<double>(draws);
  std::vector<EeStats> out(np);
  for (std::size_t k = 0; k < np; ++k) {
    auto& s = out[k];
    s.lambda_mean = tot.l / n;
    s.ee = tot.e[k] / n;
    if (draws > 1) {
      s.lambda_variance = std::max(0.0, (tot.l2 - tot.l * tot.l / n) / (n - 1));
      s.ee_stderr = std::sqrt(std::max(0.0, (tot.e2[k] - tot.e[k] * tot.e[k] / n) / (n - 1)) / n);
    }
  }
  return out;
}

inline void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::Config, msg); };
  if (cfg.trials < 1) fail("trials must be >= 1");
  if (cfg.m.empty()) fail("--m list is empty");
  if (cfg.p_dbm.empty()) fail("--p-dbm list is empty");
  for (int m : cfg.m)
    if (m < 1) fail("M must be >= 1");
  for (double p : cfg.p_dbm)
    if (!std::isfinite(p)) fail("power must be finite");
  for (double r : cfg.rd)
    if (!(r >= 0.0) || !std::isfinite(r)) fail("rd must be >= 0");
  const auto e = cfg.experiment;
  if (e != Experiment::EeDiagnostic && cfg.schemes.empty()) fail("no schemes selected");
  if (e == Experiment::RdSweep && cfg.rd.empty()) fail("rd_sweep needs an explicit --rd list");
  if (e != Experiment::RdSweep && cfg.rd.size() > 1) fail("only rd_sweep accepts an --rd list");
  if ((e == Experiment::RdSweep || e == Experiment::MSweep || e == Experiment::PowerRatioSweep) &&
      cfg.p_dbm.size() != 1)
    fail(std::string(to_string(e)) + " takes a single --p-dbm value");
  if ((e == Experiment::RdSweep || e == Experiment::PowerSweep) && cfg.m.size() != 1)
    fail(std::string(to_string(e)) + " takes a single --m value");
  if (e == Experiment::EeDiagnostic)
    for (int m : cfg.m)
      if (m < 3) fail("ee_diagnostic needs M >= 3");
}

/// Execute the configured sweep and return one row per (sweep point, scheme).
inline std::vector<CsvRow> run(const ExperimentConfig& cfg) {
  validate(cfg);
  const double noise = dbm_to_mw(cfg.noise_dbm);
  auto base = [&](int m, double p_dbm, double rd) {
    SystemParams p;
    p.m = m;
    p.p_total = dbm_to_mw(p_dbm);
    p.noise = noise;
    p.eps1 = cfg.eps1;
    p.eps2 = cfg.eps2;
    p.eps_sd = cfg.eps_sd;
    p.rd = rd;
    p.seed = cfg.seed;
    p.validate();
    return p;
  };
  auto rd_for = [&](double p_dbm) { return cfg.rd.empty() ? rd_schedule(p_dbm) : cfg.rd.front(); };

  const std::string exp_name(to_string(cfg.experiment));
  std::vector<CsvRow> rows;
  auto emit = [&](const SystemParams& p, double p_dbm, const std::string& var, double value,
                  const std::vector<SchemeStats>& stats, bool ratios) {
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
      const auto& st = stats[s];
      CsvRow r;
      r.experiment = exp_name;
      r.scheme = std::string(to_string(cfg.schemes[s]));
      r.m = p.m;
      r.p_dbm = p_dbm;
      r.rd = p.rd;
      r.sweep_var = var;
      r.sweep_value = value;
      r.mean_secrecy_rate = st.mean();
      r.stderr_ = st.stderr_of_mean();
      if (ratios && st.served > 0) {
        r.mean_ps_ratio = st.ps_ratio / static_cast<double>(st.served);
        r.mean_pr_ratio = st.pr_ratio / static_cast<double>(st.served);
      }
      r.outage_fraction = static_cast<double>(st.outages) / static_cast<double>(st.n);
      r.trials = cfg.trials;
      r.seed = cfg.seed;
      rows.push_back(std::move(r));
    }
  };

  switch (cfg.experiment) {
    case Experiment::RdSweep: {
      const double p_dbm = cfg.p_dbm.front();
      for (double rd : cfg.rd) {
        const auto p = base(cfg.m.front(), p_dbm, rd);
        emit(p, p_dbm, "rd", rd, simulate_point(p, cfg.schemes, cfg.trials, cfg.threads), false);
      }
      break;
    }
    case Experiment::PowerSweep:
      for (double p_dbm : cfg.p_dbm) {
        const auto p = base(cfg.m.front(), p_dbm, rd_for(p_dbm));
        emit(p, p_dbm, "p_dbm", p_dbm, simulate_point(p, cfg.schemes, cfg.trials, cfg.threads), false);
      }
      break;
    case Experiment::MSweep:
    case Experiment::PowerRatioSweep: {
      const double p_dbm = cfg.p_dbm.front();
      const bool ratios = cfg.experiment == Experiment::PowerRatioSweep;
      for (int m : cfg.m) {
        const auto p = base(m, p_dbm, rd_for(p_dbm));
        emit(p, p_dbm, "m", m, simulate_point(p, cfg.schemes, cfg.trials, cfg.threads), ratios);
      }
      break;
    }
    case Experiment::EeDiagnostic: {
      std::vector<double> budgets;
      for (double p_dbm : cfg.p_dbm) budgets.push_back(dbm_to_mw(p_dbm));
      std::vector<std::vector<EeStats>> per_m;
      for (int m : cfg.m) per_m.push_back(ee_point(m, budgets, noise, cfg.eps2, cfg.seed, cfg.trials, cfg.threads));
      for (std::size_t k = 0; k < cfg.p_dbm.size(); ++k) {
        const double p_dbm = cfg.p_dbm[k];
        for (std::size_t i = 0; i < cfg.m.size(); ++i) {
          const int m = cfg.m[i];
          const auto& st = per_m[i][k];
          CsvRow r;
          r.experiment = exp_name;
          r.scheme = "e_E";
          r.m = m;
          r.p_dbm = p_dbm;
          r.sweep_var = "lambda_e_variance";
          r.sweep_value = st.lambda_variance;
          r.mean_secrecy_rate = st.ee;
          r.stderr_ = st.ee_stderr;
          r.trials = cfg.trials;
          r.seed = cfg.seed;
          rows.push_back(std::move(r));
        }
      }
      break;
    }
  }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  using detail::fmt;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.scheme << ',' << fmt(r.m) << ',' << fmt(r.p_dbm) << ',' << fmt(r.rd) << ','
       << r.sweep_var << ',' << fmt(r.sweep_value) << ',' << fmt(r.mean_secrecy_rate) << ',' << fmt(r.stderr_)
       << ',' << fmt(r.mean_ps_ratio) << ',' << fmt(r.mean_pr_ratio) << ',' << fmt(r.outage_fraction) << ','
       << r.trials << ',' << r.seed << '\n';
  }
}

inline void write_csv_file(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

}  // namespace jrjs::harness

// jrjs-sim: Monte-Carlo secrecy-rate experiments, one CSV per run.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jrjs/harness.hpp"

namespace {

using jrjs::Error;
using jrjs::ErrorCode;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Config, "not a number: '" + s + "'");
  }
}

/// "14", "0,10,20" or "lo:hi:step" (inclusive).
std::vector<double> parse_power(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 3) {
    const double lo = to_double(parts[0]), hi = to_double(parts[1]), step = to_double(parts[2]);
    if (!(step > 0.0) || lo > hi) throw Error(ErrorCode::Config, "bad power range '" + s + "'");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  if (s.find(':') != std::string::npos) throw Error(ErrorCode::Config, "bad power range '" + s + "'");
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

/// Integer list; also accepts lo:hi:step.
std::vector<int> parse_m(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_power(s)) {
    if (v != std::floor(v)) throw Error(ErrorCode::Config, "M must be an integer in '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_rd(const std::string& s) {
  if (s == "auto") return {};
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

std::vector<jrjs::Scheme> parse_schemes(const std::string& s) {
  std::vector<jrjs::Scheme> out;
  for (const auto& item : split(s, ',')) {
    const auto sc = jrjs::parse_scheme(item);
    if (!sc) throw Error(ErrorCode::Config, "unknown scheme '" + item + "'");
    out.push_back(*sc);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint relay and jammer selection secrecy-rate simulator"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run one experiment and write its CSV");

  std::string experiment, m = "10", p_dbm = "14", rd = "auto", schemes, out;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  run->add_option("--experiment", experiment,
                  "rd_sweep | power_sweep | m_sweep | power_ratio_sweep | ee_diagnostic")
      ->required();
  run->add_option("--trials", trials, "Monte-Carlo trials (draws) per sweep point");
  run->add_option("--m", m, "node count or comma list");
  run->add_option("--p-dbm", p_dbm, "total power in dBm: value, comma list or lo:hi:step");
  run->add_option("--rd", rd, "target rate bit/s/Hz: value, comma list (rd_sweep) or auto");
  run->add_option("--schemes", schemes, "comma list of scheme labels");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  run->add_option("--out", out, "output CSV path, '-' for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  jrjs::harness::ExperimentConfig cfg;
  std::vector<jrjs::harness::CsvRow> rows;
  try {
    const auto exp = jrjs::harness::parse_experiment(experiment);
    if (!exp) throw Error(ErrorCode::Config, "unknown experiment '" + experiment + "'");
    cfg.experiment = *exp;
    cfg.trials = trials;
    cfg.m = parse_m(m);
    cfg.p_dbm = parse_power(p_dbm);
    cfg.rd = parse_rd(rd);
    if (cfg.experiment == jrjs::harness::Experiment::RdSweep && cfg.rd.empty()) cfg.rd = {1, 2, 3, 4};
    cfg.schemes = schemes.empty() ? jrjs::harness::default_schemes(cfg.experiment) : parse_schemes(schemes);
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.out_path = out;
    rows = jrjs::harness::run(cfg);
  } catch (const Error& e) {
    std::cerr << "jrjs-sim: " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? 3 : 2;
  }

  try {
    if (out == "-") {
      jrjs::harness::write_csv(std::cout, rows);
    } else {
      jrjs::harness::write_csv_file(out, rows);
    }
  } catch (const Error& e) {
    std::cerr << "jrjs-sim: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

// deadline-bcast: outage probabilities and schedules for the two-user
// erasure broadcast channel with hard deadlines.
//
// Subcommands: outage, policy-compare, region, schedule, rate-solve,
// validate. Every subcommand accepts --config <file.json> whose keys are the
// long option names; explicit command-line flags win.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deadline_bcast/channel.hpp"
#include "deadline_bcast/cutset.hpp"
#include "deadline_bcast/outage.hpp"
#include "deadline_bcast/schedulers.hpp"
#include "deadline_bcast/validate.hpp"
#include "deadline_bcast/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitGuard = 3;
constexpr int kExitValidationFailure = 4;

// Flat JSON experiment configs: {"t1": 12, "eps": "0.1,0.2,0.2,0.5", ...}
// with keys named after the long options. Values merge under flags given on
// the command line; unknown keys and wrong types are field-level errors.
class ConfigMerger {
 public:
  ConfigMerger(const CLI::App& cmd, const std::string& path) : cmd_(cmd) {
    if (path.empty()) return;
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("config: cannot open '" + path + "'");
    try {
      file >> json_;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config: not valid JSON: " + std::string(e.what()));
    }
    if (!json_.is_object()) throw std::invalid_argument("config: must be a JSON object");
  }

  template <typename T>
  void merge(const char* key, T& target) {
    if (json_.is_null()) return;
    const auto it = json_.find(key);
    if (it == json_.end()) return;
    seen_.push_back(key);
    if (cmd_.count(std::string("--") + key) > 0) return;  // command line wins
    try {
      if constexpr (std::is_same_v<T, std::vector<double>>) {
        if (it->is_number()) {
          target = {it->get<double>()};
          return;
        }
      }
      it->get_to(target);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string("config field '") + key + "': wrong type");
    }
  }

  // every key must have matched some option
  void finish() const {
    if (json_.is_null()) return;
    for (const auto& [key, value] : json_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        throw std::invalid_argument("config: unknown field '" + key + "'");
      }
    }
  }

 private:
  const CLI::App& cmd_;
  nlohmann::json json_;
  std::vector<std::string> seen_;
};

// ---- small formatting helpers ---------------------------------------------

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string meta_line(const std::optional<std::uint64_t>& seed) {
  std::string line = std::string("# deadline-bcast v") + dbc::kVersion + " generator=";
  line += seed ? dbc::kGeneratorName : "none";
  line += " seed=";
  line += seed ? std::to_string(*seed) : "none";
  return line;
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::invalid_argument("out: cannot open '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---- sweep ranges ----------------------------------------------------------

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::vector<double> values() const {
    std::vector<double> out;
    for (int i = 0;; ++i) {
      const double v = lo + step * i;
      if (v > hi + 1e-9) break;
      out.push_back(v);
    }
    return out;
  }
};

Range parse_range(const std::string& text, const char* name) {
  Range r;
  const auto bad = [&] {
    throw std::invalid_argument(std::string(name) + ": expected min:max[:step], got '" + text + "'");
  };
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t colon = text.find(':', pos);
    const std::string tok = text.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) bad();
    } catch (const std::logic_error&) {
      bad();
    }
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) bad();
  r.lo = parts[0];
  r.hi = parts[1];
  r.step = parts.size() == 3 ? parts[2] : 1.0;
  if (r.step <= 0 || r.hi < r.lo) bad();
  return r;
}

std::vector<double> parse_doubles(const std::string& text, const char* name) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw std::invalid_argument(std::string(name) + ": bad number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

dbc::ErasureProbs eps_from_string(const std::string& text) {
  const std::vector<double> v = parse_doubles(text, "eps");
  if (v.size() != 4) throw std::invalid_argument("eps: expected eps00,eps01,eps10,eps11");
  return dbc::ErasureProbs(v[0], v[1], v[2], v[3]);
}

// ---- outage ----------------------------------------------------------------

struct OutageArgs {
  std::string config;
  int t1 = 0;
  int t2 = 0;
  double lambda1 = -1.0;
  double lambda2 = -1.0;
  std::string eps;
  double p_iid = -1.0;
  std::string method = "exact";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string sweep_lambda;
  std::string sweep_lambda1;
  std::string sweep_lambda2;
  std::string sweep_t;
  std::string sweep_p;
  std::vector<double> m;
  std::string out;
  std::string gnuplot;
  std::string format = "auto";  // auto | json | csv
};

void merge_outage_config(OutageArgs& a, const CLI::App& cmd) {
  ConfigMerger m(cmd, a.config);
  m.merge("t1", a.t1);
  m.merge("t2", a.t2);
  m.merge("lambda1", a.lambda1);
  m.merge("lambda2", a.lambda2);
  m.merge("eps", a.eps);
  m.merge("p", a.p_iid);
  m.merge("method", a.method);
  m.merge("trials", a.trials);
  m.merge("seed", a.seed);
  m.merge("sweep-lambda", a.sweep_lambda);
  m.merge("sweep-lambda1", a.sweep_lambda1);
  m.merge("sweep-lambda2", a.sweep_lambda2);
  m.merge("sweep-t", a.sweep_t);
  m.merge("sweep-p", a.sweep_p);
  m.merge("m", a.m);
  m.merge("out", a.out);
  m.merge("gnuplot", a.gnuplot);
  m.merge("format", a.format);
  m.finish();
}

struct OutageRow {
  int t1;
  int t2;
  dbc::ErasureProbs eps;
  double lambda1;
  double lambda2;
};

std::vector<OutageRow> expand_rows(const OutageArgs& a) {
  // deadlines
  std::vector<std::pair<int, int>> deadlines;
  if (!a.sweep_t.empty()) {
    for (const double tv : parse_range(a.sweep_t, "sweep-t").values()) {
      const int t = static_cast<int>(std::lround(tv));
      deadlines.emplace_back(t, t);
    }
  } else {
    if (a.t1 <= 0 || a.t2 <= 0) {
      throw std::invalid_argument("t1/t2: required (or use --sweep-t)");
    }
    deadlines.emplace_back(a.t1, a.t2);
  }

  // channel
  std::vector<dbc::ErasureProbs> channels;
  const int eps_specs = (!a.eps.empty()) + (a.p_iid >= 0.0) + (!a.sweep_p.empty());
  if (eps_specs != 1) {
    throw std::invalid_argument("eps: give exactly one of --eps, --p, --sweep-p");
  }
  if (!a.eps.empty()) {
    channels.push_back(eps_from_string(a.eps));
  } else if (a.p_iid >= 0.0) {
    channels.push_back(dbc::ErasureProbs::from_iid_erasure(a.p_iid));
  } else {
    for (const double p : parse_range(a.sweep_p, "sweep-p").values()) {
      channels.push_back(dbc::ErasureProbs::from_iid_erasure(p));
    }
  }

  // rates
  std::vector<std::pair<double, double>> rates;
  if (!a.sweep_lambda.empty()) {
    if (!a.sweep_lambda1.empty() || !a.sweep_lambda2.empty() || !a.m.empty()) {
      throw std::invalid_argument("sweep-lambda: cannot combine with other rate sweeps");
    }
    for (const double v : parse_range(a.sweep_lambda, "sweep-lambda").values()) {
      rates.emplace_back(v, v);
    }
  } else {
    std::vector<double> l2s;
    if (!a.sweep_lambda2.empty()) {
      l2s = parse_range(a.sweep_lambda2, "sweep-lambda2").values();
    } else if (a.lambda2 >= 0.0) {
      l2s.push_back(a.lambda2);
    }
    if (!a.m.empty()) {
      if (!a.sweep_lambda1.empty() || a.lambda1 >= 0.0) {
        throw std::invalid_argument("m: fixes lambda1 = m*lambda2; drop --lambda1/--sweep-lambda1");
      }
      if (l2s.empty()) throw std::invalid_argument("m: needs --lambda2 or --sweep-lambda2");
      for (const double mv : a.m) {
        for (const double l2 : l2s) rates.emplace_back(mv * l2, l2);
      }
    } else {
      std::vector<double> l1s;
      if (!a.sweep_lambda1.empty()) {
        l1s = parse_range(a.sweep_lambda1, "sweep-lambda1").values();
      } else if (a.lambda1 >= 0.0) {
        l1s.push_back(a.lambda1);
      }
      if (l1s.empty() || l2s.empty()) {
        throw std::invalid_argument("lambda1/lambda2: required (or use a sweep flag)");
      }
      for (const double l1 : l1s) {
        for (const double l2 : l2s) rates.emplace_back(l1, l2);
      }
    }
  }

  std::vector<OutageRow> rows;
  for (const auto& [t1, t2] : deadlines) {
    for (const dbc::ErasureProbs& eps : channels) {
      for (const auto& [l1, l2] : rates) {
        rows.push_back(OutageRow{t1, t2, eps, l1, l2});
      }
    }
  }
  return rows;
}

void write_outage_gnuplot(const OutageArgs& a, const std::string& csv_path) {
  if (a.gnuplot.empty()) return;
  std::ofstream gp(a.gnuplot);
  if (!gp) throw std::invalid_argument("gnuplot: cannot open '" + a.gnuplot + "'");
  gp << "# gnuplot script generated by deadline-bcast v" << dbc::kVersion << "\n";
  gp << "set datafile separator ','\n";
  gp << "set key autotitle columnhead\n";
  gp << "set ylabel 'P_out'\n";
  const std::string data = csv_path.empty() ? "out.csv" : csv_path;
  if (!a.sweep_t.empty() && (!a.sweep_lambda.empty() || !a.sweep_lambda2.empty())) {
    gp << "set dgrid3d\n";
    const std::string ycol = !a.sweep_lambda.empty() ? "lambda1" : "lambda2";
    gp << "splot '" << data << "' using 't1':'" << ycol << "':'pout' with lines\n";
  } else if (!a.sweep_t.empty()) {
    gp << "set xlabel 'T'\n";
    gp << "plot '" << data << "' using 't1':'pout' with linespoints\n";
  } else {
    const std::string xcol = !a.sweep_lambda2.empty() ? "lambda2" : "lambda1";
    gp << "set xlabel '" << xcol << "'\n";
    gp << "plot '" << data << "' using '" << xcol << "':'pout' with linespoints\n";
  }
}

int cmd_outage(const OutageArgs& a) {
  const dbc::OutageMethod method = dbc::method_from_name(a.method);
  const std::vector<OutageRow> rows = expand_rows(a);
  const bool swept = !a.sweep_lambda.empty() || !a.sweep_lambda1.empty() ||
                     !a.sweep_lambda2.empty() || !a.sweep_t.empty() || !a.sweep_p.empty();
  std::string format = a.format;
  if (format == "auto") format = swept || rows.size() > 1 ? "csv" : "json";
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format: expected auto, csv or json");
  }

  auto evaluate = [&](const OutageRow& row) {
    const dbc::DeadlineConfig config(row.lambda1, row.lambda2, row.t1, row.t2);
    switch (method) {
      case dbc::OutageMethod::Exact: return dbc::exact_outage(config, row.eps);
      case dbc::OutageMethod::BruteForce: return dbc::brute_force_outage(config, row.eps);
      case dbc::OutageMethod::MonteCarlo:
        return dbc::monte_carlo_outage(dbc::PolicyId::GreedyFull, config, row.eps, a.trials,
                                       a.seed);
    }
    throw std::logic_error("unreachable");
  };

  OutputFile output(a.out);
  std::ostream& os = output.stream();
  const bool monte_carlo = method == dbc::OutageMethod::MonteCarlo;
  const std::optional<std::uint64_t> seed =
      monte_carlo ? std::optional<std::uint64_t>(a.seed) : std::nullopt;

  if (format == "json") {
    const OutageRow& row = rows.front();
    const dbc::DeadlineConfig config(row.lambda1, row.lambda2, row.t1, row.t2);
    os << dbc::outage_to_json(evaluate(row), config, row.eps) << "\n";
  } else {
    os << meta_line(seed) << "\n";
    os << "t1,t2,lambda1,lambda2,eps00,eps01,eps10,eps11,pout,method,trials,seed,stderr\n";
    for (const OutageRow& row : rows) {
      const dbc::OutageResult r = evaluate(row);
      os << row.t1 << ',' << row.t2 << ',' << num(row.lambda1) << ',' << num(row.lambda2) << ','
         << num(row.eps.eps00()) << ',' << num(row.eps.eps01()) << ',' << num(row.eps.eps10())
         << ',' << num(row.eps.eps11()) << ',' << num(r.value) << ',' << dbc::method_name(r.method);
      if (monte_carlo) {
        os << ',' << r.trials << ',' << r.seed << ',' << num(r.stderr_est);
      } else {
        os << ",,,";
      }
      os << "\n";
    }
  }
  write_outage_gnuplot(a, a.out);
  return kExitOk;
}

// ---- policy-compare --------------------------------------------------------

struct PolicyCompareArgs {
  std::string config;
  std::string sweep_t = "2:10";
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::string eps;
  double p_iid = -1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out;
  std::string gnuplot;
};

void merge_compare_config(PolicyCompareArgs& a, const CLI::App& cmd) {
  ConfigMerger m(cmd, a.config);
  m.merge("sweep-t", a.sweep_t);
  m.merge("lambda1", a.lambda1);
  m.merge("lambda2", a.lambda2);
  m.merge("eps", a.eps);
  m.merge("p", a.p_iid);
  m.merge("trials", a.trials);
  m.merge("seed", a.seed);
  m.merge("out", a.out);
  m.merge("gnuplot", a.gnuplot);
  m.finish();
}

int cmd_policy_compare(const PolicyCompareArgs& a) {
  const int eps_specs = (!a.eps.empty()) + (a.p_iid >= 0.0);
  if (eps_specs != 1) throw std::invalid_argument("eps: give exactly one of --eps, --p");
  const dbc::ErasureProbs eps =
      a.eps.empty() ? dbc::ErasureProbs::from_iid_erasure(a.p_iid) : eps_from_string(a.eps);

  OutputFile output(a.out);
  std::ostream& os = output.stream();
  os << meta_line(a.seed) << "\n";
  os << "t,lambda1,lambda2,pout_full,pout_current,stderr_current,pout_past,stderr_past,trials,"
        "seed\n";

  bool ordered = true;
  std::string violation;
  for (const double tv : parse_range(a.sweep_t, "sweep-t").values()) {
    const int t = static_cast<int>(std::lround(tv));
    const dbc::DeadlineConfig config(a.lambda1, a.lambda2, t, t);
    // Equal deadlines: the N = 1 closed form is exact at any horizon.
    const double full = dbc::equal_deadline_outage(a.lambda1, a.lambda2, t, eps);
    const dbc::OutageResult cur =
        dbc::monte_carlo_outage(dbc::PolicyId::CurrentCsi, config, eps, a.trials, a.seed);
    const dbc::OutageResult past =
        dbc::monte_carlo_outage(dbc::PolicyId::PastCsi, config, eps, a.trials, a.seed);
    os << t << ',' << num(a.lambda1) << ',' << num(a.lambda2) << ',' << num(full) << ','
       << num(cur.value) << ',' << num(cur.stderr_est) << ',' << num(past.value) << ','
       << num(past.stderr_est) << ',' << a.trials << ',' << a.seed << "\n";

    const double combined =
        std::sqrt(cur.stderr_est * cur.stderr_est + past.stderr_est * past.stderr_est);
    if (full > cur.value + 3.0 * cur.stderr_est ||
        cur.value > past.value + 3.0 * combined) {
      ordered = false;
      violation = "T=" + std::to_string(t);
    }
  }

  if (!a.gnuplot.empty()) {
    std::ofstream gp(a.gnuplot);
    if (!gp) throw std::invalid_argument("gnuplot: cannot open '" + a.gnuplot + "'");
    gp << "# gnuplot script generated by deadline-bcast v" << dbc::kVersion << "\n"
       << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set xlabel 'T'\nset ylabel 'P_out'\nset logscale y\n"
       << "plot '" << a.out << "' using 't':'pout_full' with linespoints, \\\n"
       << "     '" << a.out << "' using 't':'pout_current' with linespoints, \\\n"
       << "     '" << a.out << "' using 't':'pout_past' with linespoints\n";
  }
  if (!ordered) {
    std::cerr << "policy-compare: ordering full <= current <= past violated beyond 3 sigma at "
              << violation << "\n";
    return kExitValidationFailure;
  }
  return kExitOk;
}

// ---- region ----------------------------------------------------------------

struct RegionArgs {
  std::string config;
  std::string pattern;
  int t1 = 0;
  std::string out;
};

void merge_region_config(RegionArgs& a, const CLI::App& cmd) {
  ConfigMerger m(cmd, a.config);
  m.merge("pattern", a.pattern);
  m.merge("t1", a.t1);
  m.merge("out", a.out);
  m.finish();
}

int cmd_region(const RegionArgs& a) {
  if (a.pattern.empty()) throw std::invalid_argument("pattern: required");
  const dbc::ErasurePattern pattern = dbc::ErasurePattern::parse(a.pattern);
  const std::vector<dbc::BlockStats> stats = dbc::block_stats(pattern, a.t1);
  const std::vector<dbc::RatePoint> vertices = dbc::region_boundary(stats);
  OutputFile output(a.out);
  std::ostream& os = output.stream();
  os << meta_line(std::nullopt) << "\n";
  os << "lambda1,lambda2\n";
  for (const dbc::RatePoint& v : vertices) {
    os << num(v.lambda1) << ',' << num(v.lambda2) << "\n";
  }
  return kExitOk;
}

// ---- schedule ----------------------------------------------------------------

struct ScheduleArgs {
  std::string config;
  std::string pattern;
  int t1 = 0;
  int t2 = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::string policy = "greedy_full";
  std::string eps;
  std::string out;
};

void merge_schedule_config(ScheduleArgs& a, const CLI::App& cmd) {
  ConfigMerger m(cmd, a.config);
  m.merge("pattern", a.pattern);
  m.merge("t1", a.t1);
  m.merge("t2", a.t2);
  m.merge("lambda1", a.lambda1);
  m.merge("lambda2", a.lambda2);
  m.merge("policy", a.policy);
  m.merge("eps", a.eps);
  m.merge("out", a.out);
  m.finish();
}

int cmd_schedule(const ScheduleArgs& a) {
  if (a.pattern.empty()) throw std::invalid_argument("pattern: required");
  const dbc::ErasurePattern pattern = dbc::ErasurePattern::parse(a.pattern);
  const int t2 = a.t2 > 0 ? a.t2 : pattern.length();
  const dbc::DeadlineConfig config(a.lambda1, a.lambda2, a.t1 > 0 ? a.t1 : t2, t2);
  const dbc::PolicyId policy = dbc::policy_from_name(a.policy);

  dbc::FrameOutcome outcome;
  if (policy == dbc::PolicyId::GreedyFull) {
    outcome = dbc::greedy_full_csi(pattern, config);
  } else {
    if (a.eps.empty()) throw std::invalid_argument("eps: required for causal policies");
    const dbc::ErasureProbs eps = eps_from_string(a.eps);
    const int l1 = std::max(1, static_cast<int>(std::lround(config.lambda1)));
    const int l2 = std::max(1, static_cast<int>(std::lround(config.lambda2)));
    const dbc::CostToGoTable cost = dbc::build_cost_table(config.frame_length(), l1, l2, eps);
    outcome = policy == dbc::PolicyId::CurrentCsi
                  ? dbc::current_csi_policy(pattern, config, cost)
                  : dbc::past_csi_policy(pattern, config, eps, cost);
  }

  OutputFile output(a.out);
  std::ostream& os = output.stream();
  os << meta_line(std::nullopt) << "\n";
  os << dbc::format_trace(outcome);
  os << "met_deadlines=" << (outcome.met_deadlines ? "true" : "false") << "\n";
  return kExitOk;
}

// ---- rate-solve ---------------------------------------------------------------

struct RateSolveArgs {
  std::string config;
  int t1 = 0;
  int t2 = 0;
  std::string eps;
  double target_p = -1.0;
  double m = 1.0;
  std::string out;
};

void merge_rate_config(RateSolveArgs& a, const CLI::App& cmd) {
  ConfigMerger merger(cmd, a.config);
  merger.merge("t1", a.t1);
  merger.merge("t2", a.t2);
  merger.merge("eps", a.eps);
  merger.merge("target-p", a.target_p);
  merger.merge("m", a.m);
  merger.merge("out", a.out);
  merger.finish();
}

int cmd_rate_solve(const RateSolveArgs& a) {
  if (a.eps.empty()) throw std::invalid_argument("eps: required");
  if (a.target_p < 0.0) throw std::invalid_argument("target-p: required, in [0, 1)");
  const dbc::ErasureProbs eps = eps_from_string(a.eps);
  const dbc::RateSolution sol = dbc::rate_solver(eps, a.t1, a.t2, a.target_p, a.m);
  nlohmann::ordered_json j;
  j["lambda1"] = sol.lambda1;
  j["lambda2"] = sol.lambda2;
  j["pout"] = sol.pout;
  j["zero_rate"] = sol.zero_rate;
  j["target_p"] = a.target_p;
  j["m"] = a.m;
  j["config"] = {{"t1", a.t1}, {"t2", a.t2}};
  j["eps"] = {{"eps00", eps.eps00()},
              {"eps01", eps.eps01()},
              {"eps10", eps.eps10()},
              {"eps11", eps.eps11()}};
  OutputFile output(a.out);
  output.stream() << j.dump() << "\n";
  return kExitOk;
}

// ---- validate -----------------------------------------------------------------

int cmd_validate(bool quick) {
  const std::vector<dbc::CheckResult> results = dbc::run_validation(quick);
  bool all_pass = true;
  std::size_t width = 0;
  for (const dbc::CheckResult& r : results) width = std::max(width, r.name.size());
  for (const dbc::CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-*s  %s  %6.2fs  %s\n", static_cast<int>(width), r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "validation FAILED");
  return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deadline-bcast: two-user erasure broadcast channel with hard deadlines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("deadline-bcast v") + dbc::kVersion);

  OutageArgs outage;
  CLI::App* outage_cmd = app.add_subcommand("outage", "global deadline outage probability");
  outage_cmd->add_option("--config", outage.config, "JSON config (keys = long option names)");
  outage_cmd->add_option("--t1", outage.t1, "deadline of user 1 (slots)");
  outage_cmd->add_option("--t2", outage.t2, "deadline of user 2 (multiple of t1)");
  outage_cmd->add_option("--lambda1", outage.lambda1, "arrival rate of user 1");
  outage_cmd->add_option("--lambda2", outage.lambda2, "arrival rate of user 2");
  outage_cmd->add_option("--eps", outage.eps, "eps00,eps01,eps10,eps11");
  outage_cmd->add_option("--p", outage.p_iid, "iid per-user erasure probability");
  outage_cmd->add_option("--method", outage.method, "exact | bruteforce | mc");
  outage_cmd->add_option("--trials", outage.trials, "Monte Carlo trials");
  outage_cmd->add_option("--seed", outage.seed, "Monte Carlo seed");
  outage_cmd->add_option("--sweep-lambda", outage.sweep_lambda, "lambda1=lambda2 range min:max:step");
  outage_cmd->add_option("--sweep-lambda1", outage.sweep_lambda1, "lambda1 range min:max:step");
  outage_cmd->add_option("--sweep-lambda2", outage.sweep_lambda2, "lambda2 range min:max:step");
  outage_cmd->add_option("--sweep-t", outage.sweep_t, "T1=T2 range min:max[:step]");
  outage_cmd->add_option("--sweep-p", outage.sweep_p, "iid erasure probability range min:max:step");
  outage_cmd->add_option("--m", outage.m, "rate ratio(s): lambda1 = m * lambda2");
  outage_cmd->add_option("--out", outage.out, "output path (default stdout)");
  outage_cmd->add_option("--gnuplot", outage.gnuplot, "also write a gnuplot script");
  outage_cmd->add_option("--format", outage.format, "auto | json | csv");

  PolicyCompareArgs compare;
  CLI::App* compare_cmd =
      app.add_subcommand("policy-compare", "exact full-CSI vs causal-policy Monte Carlo");
  compare_cmd->add_option("--config", compare.config, "JSON config (keys = long option names)");
  compare_cmd->add_option("--sweep-t", compare.sweep_t, "T1=T2 range min:max[:step]");
  compare_cmd->add_option("--lambda1", compare.lambda1, "arrival rate of user 1 (integer)");
  compare_cmd->add_option("--lambda2", compare.lambda2, "arrival rate of user 2 (integer)");
  compare_cmd->add_option("--eps", compare.eps, "eps00,eps01,eps10,eps11");
  compare_cmd->add_option("--p", compare.p_iid, "iid per-user erasure probability");
  compare_cmd->add_option("--trials", compare.trials, "Monte Carlo trials per point");
  compare_cmd->add_option("--seed", compare.seed, "Monte Carlo seed");
  compare_cmd->add_option("--out", compare.out, "output path (default stdout)");
  compare_cmd->add_option("--gnuplot", compare.gnuplot, "also write a gnuplot script");

  RegionArgs region;
  CLI::App* region_cmd = app.add_subcommand("region", "cut-set region vertices for a pattern");
  region_cmd->add_option("--config", region.config, "JSON config (keys = long option names)");
  region_cmd->add_option("--pattern", region.pattern, "frame pattern, e.g. 10,11,00,01,11,10");
  region_cmd->add_option("--t1", region.t1, "block length T1");
  region_cmd->add_option("--out", region.out, "output path (default stdout)");

  ScheduleArgs schedule;
  CLI::App* schedule_cmd = app.add_subcommand("schedule", "per-slot trace of a policy on a pattern");
  schedule_cmd->add_option("--config", schedule.config, "JSON config (keys = long option names)");
  schedule_cmd->add_option("--pattern", schedule.pattern, "frame pattern");
  schedule_cmd->add_option("--t1", schedule.t1, "deadline of user 1 (default: frame length)");
  schedule_cmd->add_option("--t2", schedule.t2, "deadline of user 2 (default: pattern length)");
  schedule_cmd->add_option("--lambda1", schedule.lambda1, "arrival rate of user 1");
  schedule_cmd->add_option("--lambda2", schedule.lambda2, "arrival rate of user 2");
  schedule_cmd->add_option("--policy", schedule.policy, "greedy_full | current_csi | past_csi");
  schedule_cmd->add_option("--eps", schedule.eps, "channel probabilities (causal policies)");
  schedule_cmd->add_option("--out", schedule.out, "output path (default stdout)");

  RateSolveArgs rate;
  CLI::App* rate_cmd = app.add_subcommand("rate-solve", "largest rates with outage <= target");
  rate_cmd->add_option("--config", rate.config, "JSON config (keys = long option names)");
  rate_cmd->add_option("--t1", rate.t1, "deadline of user 1");
  rate_cmd->add_option("--t2", rate.t2, "deadline of user 2");
  rate_cmd->add_option("--eps", rate.eps, "eps00,eps01,eps10,eps11");
  rate_cmd->add_option("--target-p", rate.target_p, "outage target in [0, 1)");
  rate_cmd->add_option("--m", rate.m, "ray lambda1 = m * lambda2");
  rate_cmd->add_option("--out", rate.out, "output path (default stdout)");

  bool quick = false;
  CLI::App* validate_cmd = app.add_subcommand("validate", "run the self-check suite");
  validate_cmd->add_flag("--quick", quick, "reduced domains, finishes in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitInvalidConfig;
  }

  try {
    if (outage_cmd->parsed()) {
      merge_outage_config(outage, *outage_cmd);
      return cmd_outage(outage);
    }
    if (compare_cmd->parsed()) {
      merge_compare_config(compare, *compare_cmd);
      return cmd_policy_compare(compare);
    }
    if (region_cmd->parsed()) {
      merge_region_config(region, *region_cmd);
      return cmd_region(region);
    }
    if (schedule_cmd->parsed()) {
      merge_schedule_config(schedule, *schedule_cmd);
      return cmd_schedule(schedule);
    }
    if (rate_cmd->parsed()) {
      merge_rate_config(rate, *rate_cmd);
      return cmd_rate_solve(rate);
    }
    if (validate_cmd->parsed()) return cmd_validate(quick);
  } catch (const dbc::guard_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

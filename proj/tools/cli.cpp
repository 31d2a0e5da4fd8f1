#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gor/baselines.hpp"
#include "gor/errors.hpp"
#include "gor/realize.hpp"
#include "report.hpp"

#ifndef GOR_VERSION
#define GOR_VERSION "0.0.0"
#endif

namespace gor::cli {

namespace {

using Clock = std::chrono::steady_clock;

// The seven-sample sequence of the worked example.
const std::vector<double> kMotivationalData{3.0, 5.0, 2.0, 3.0, 4.0, 2.0, 3.0};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) {
    part = trim(part);
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

double parse_real(const std::string& key, const std::string& text) {
  const Complex z = parse_pole(text);
  if (z.imag() != 0.0) throw InputError(key + ": expected a real number, got '" + text + "'");
  return z.real();
}

long parse_integer(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InputError(key + ": expected an integer, got '" + text + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
  std::vector<double> v;
  for (const auto& p : split(text, ',')) v.push_back(parse_real(key, p));
  return v;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<Complex> parse_poles(const std::vector<std::string>& texts) {
  std::vector<Complex> poles;
  for (const auto& t : texts) poles.push_back(parse_pole(t));
  return poles;
}

/// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InputError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct RealizeArgs {
  std::string data;
  int order = 0;
  std::vector<std::string> fixed;
  std::string method = "gor";
  std::string output = "json";
  bool all_candidates = false;
  std::string out;
  bool timings = false;
  int max_degree = 40;
};

int cmd_realize(const RealizeArgs& a, std::ostream& out) {
  std::ifstream in(a.data, std::ios::binary);
  if (!in) throw InputError("cannot read data file '" + a.data + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream text(bytes);
  const Signal y(read_data(text));

  const FixedPoleSet fixed = FixedPoleSet::with_conjugates(parse_poles(a.fixed));
  const auto start = Clock::now();

  RunReport report;
  report.tool_version = GOR_VERSION;
  report.input_path = a.data;
  report.input_sha256 = sha256_hex(bytes);
  report.N = static_cast<long>(y.size());
  report.n = a.order;
  report.m = fixed.size();
  report.fixed_poles = fixed.poles();
  report.method = a.method;

  RealizeOptions options;
  options.max_macaulay_degree = a.max_degree;
  if (a.method == "gor") {
    const RealizationResult res = realize(y, a.order, fixed, options);
    report.n_affine = res.n_affine;
    report.n_real = res.n_real;
    report.n_infinite = res.n_infinite;
    report.global = candidate_report(res.best());
    if (a.all_candidates) {
      for (const auto& c : res.candidates) report.candidates.push_back(candidate_report(c));
    }
    report.warnings = res.warnings;
  } else {
    const BaselineResult res =
        a.method == "npf" ? npf(y, a.order, fixed, options) : tsd(y, a.order, fixed, options);
    report.global = candidate_report(res);
  }
  if (a.timings) report.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();

  Sink sink(a.out, out);
  if (a.output == "json") {
    sink.get() << to_json(report).dump(2) << '\n';
  } else {
    write_report_csv(sink.get(), report);
  }
  return kSuccess;
}

struct MonteCarloArgs {
  std::string config;
  std::string out;
  std::string summary;
  bool timings = false;
  int threads = 0;
  std::string sgor;
  int trials = 0;
};

int cmd_montecarlo(const MonteCarloArgs& a, std::ostream& out) {
  std::ifstream in(a.config);
  if (!in) throw InputError("cannot read config file '" + a.config + "'");
  MonteCarloConfig cfg = parse_montecarlo_config(in);
  if (a.threads > 0) cfg.threads = a.threads;
  if (a.trials > 0) cfg.trials = a.trials;
  if (!a.sgor.empty()) {
    std::istringstream line("sgor = " + a.sgor);
    cfg.sgor = parse_montecarlo_config(line).sgor;
  }
  const auto rows = montecarlo(cfg);
  {
    Sink sink(a.out, out);
    write_trials_csv(sink.get(), rows, a.timings);
  }
  if (!a.summary.empty()) {
    Sink sink(a.summary, out);
    write_summary_csv(sink.get(), summarize(rows));
  }
  return kSuccess;
}

struct GendataArgs {
  std::string preset;
  std::vector<std::string> poles;
  std::vector<double> C;
  std::vector<double> x0;
  std::vector<double> T;
  long N = 0;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gendata(const GendataArgs& a, std::ostream& out) {
  Signal x({0.0});
  if (a.preset == "motivational") {
    if (!a.poles.empty()) throw InputError("--preset motivational takes no poles");
    x = Signal(to_vector(kMotivationalData));
    if (a.N > 0 && a.N != x.size()) throw InputError("--preset motivational has N = 7");
  } else {
    MonteCarloConfig base;
    if (a.preset == "example3") base = example_three_config();
    std::vector<Complex> poles = a.poles.empty() ? base.true_poles : parse_poles(a.poles);
    const auto n = static_cast<Eigen::Index>(poles.size());
    if (n == 0) throw InputError("gendata: give --pole or a --preset");
    const Vector C = a.C.empty() ? (base.C.size() == n ? base.C : Vector::Ones(n)) : to_vector(a.C);
    const Vector x0 = a.x0.empty() ? (base.x0.size() == n ? base.x0 : Vector::Ones(n)) : to_vector(a.x0);
    std::optional<Matrix> T;
    if (!a.T.empty()) {
      if (static_cast<Eigen::Index>(a.T.size()) != n * n) throw InputError("--T needs n*n entries");
      T = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          a.T.data(), n, n);
    }
    const long N = a.N > 0 ? a.N : static_cast<long>(base.N);
    x = simulate(StateSpaceModel::from_poles(poles, C, x0, T), N);
  }
  const Signal y = add_noise(x, a.sigma, a.seed);
  Sink sink(a.out, out);
  write_data(sink.get(), y.values());
  return kSuccess;
}

}  // namespace

MonteCarloConfig parse_montecarlo_config(std::istream& in) {
  MonteCarloConfig cfg = example_three_config();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key == "N") {
      cfg.N = parse_integer(key, value);
    } else if (key == "sigmas") {
      cfg.sigma_levels = parse_reals(key, value);
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_integer(key, value));
    } else if (key == "seed") {
      const long s = parse_integer(key, value);
      if (s < 0) throw InputError("seed must be >= 0");
      cfg.base_seed = static_cast<std::uint64_t>(s);
    } else if (key == "poles") {
      cfg.true_poles = FixedPoleSet::with_conjugates(parse_poles(split(value, ';'))).poles();
    } else if (key == "fixed") {
      cfg.fixed_poles = FixedPoleSet::with_conjugates(parse_poles(split(value, ';'))).poles();
    } else if (key == "C") {
      cfg.C = to_vector(parse_reals(key, value));
    } else if (key == "x0") {
      cfg.x0 = to_vector(parse_reals(key, value));
    } else if (key == "T") {
      const auto t = parse_reals(key, value);
      const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(t.size()))));
      if (n * n != static_cast<Eigen::Index>(t.size())) throw InputError("T needs n*n entries");
      cfg.T = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          t.data(), n, n);
    } else if (key == "sgor") {
      if (value == "off") {
        cfg.sgor = SgorMode::Off;
      } else if (value == "multistart") {
        cfg.sgor = SgorMode::Multistart;
      } else if (value == "exact") {
        cfg.sgor = SgorMode::Exact;
      } else {
        throw InputError("sgor must be off, multistart or exact");
      }
    } else {
      throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& rows, bool with_timings) {
  out << "sigma,trial,method,misfit_sq,true_err_sq,poles,wall_time_s\n";
  for (const auto& r : rows) {
    out << format_number(r.sigma) << ',' << r.trial << ',' << to_string(r.method) << ',';
    if (r.error.empty()) {
      out << format_number(r.misfit_sq) << ',' << format_number(r.true_err_sq) << ',';
      for (std::size_t i = 0; i < r.estimated_poles.size(); ++i) {
        out << (i ? " " : "") << format_complex(r.estimated_poles[i]);
      }
    } else {
      std::string msg = r.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out << ",,error: " << msg;
    }
    out << ',' << format_number(with_timings ? r.wall_time : 0.0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "sigma,method,metric,count,min,q1,median,q3,max\n";
  for (const auto& r : rows) {
    out << format_number(r.sigma) << ',' << to_string(r.method) << ',' << r.metric << ',' << r.count
        << ',' << format_number(r.stats.min) << ',' << format_number(r.stats.q1) << ','
        << format_number(r.stats.median) << ',' << format_number(r.stats.q3) << ','
        << format_number(r.stats.max) << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Globally optimal least-squares realization of autonomous LTI models", "gor"};
  app.set_version_flag("--version", GOR_VERSION);
  app.require_subcommand(1);

  RealizeArgs ra;
  auto* realize_cmd = app.add_subcommand("realize", "Fit an order-n model to a data file");
  realize_cmd->add_option("data", ra.data, "Data file, one sample per line")->required();
  realize_cmd->add_option("--order,-n", ra.order, "Model order n")->required();
  realize_cmd->add_option("--fixed-pole", ra.fixed,
                          "Known pole re[,im] or r@theta; repeatable, conjugates added");
  realize_cmd->add_option("--method", ra.method)->check(CLI::IsMember({"gor", "npf", "tsd"}));
  realize_cmd->add_option("--output", ra.output)->check(CLI::IsMember({"json", "csv"}));
  realize_cmd->add_flag("--all-candidates", ra.all_candidates, "Report every real critical point");
  realize_cmd->add_option("--out,-o", ra.out, "Output file (default stdout)");
  realize_cmd->add_flag("--timings", ra.timings, "Record wall time (output is then not reproducible)");
  realize_cmd->add_option("--max-degree", ra.max_degree, "Macaulay degree limit")
      ->check(CLI::PositiveNumber);

  MonteCarloArgs ma;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Seeded comparison of standard and fixed-pole fits");
  mc_cmd->add_option("config", ma.config, "Key-value config file")->required();
  mc_cmd->add_option("--out,-o", ma.out, "Trial CSV (default stdout)");
  mc_cmd->add_option("--summary", ma.summary, "Per-sigma quartile CSV");
  mc_cmd->add_flag("--timings", ma.timings, "Record wall time per trial");
  mc_cmd->add_option("--threads", ma.threads, "Worker threads (default REALIZE_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  mc_cmd->add_option("--sgor", ma.sgor, "Standard fit: off, multistart or exact")
      ->check(CLI::IsMember({"off", "multistart", "exact"}));
  mc_cmd->add_option("--trials", ma.trials, "Override the trial count")->check(CLI::PositiveNumber);

  GendataArgs ga;
  auto* gen_cmd = app.add_subcommand("gendata", "Simulate x_k = C A^k x0 plus seeded Gaussian noise");
  gen_cmd->add_option("--preset", ga.preset)->check(CLI::IsMember({"motivational", "example3"}));
  gen_cmd->add_option("--pole", ga.poles, "Pole re[,im] or r@theta; repeatable, give conjugates too");
  gen_cmd->add_option("--C", ga.C, "Output row")->delimiter(',');
  gen_cmd->add_option("--x0", ga.x0, "Initial state")->delimiter(',');
  gen_cmd->add_option("--T", ga.T, "Similarity transform, row major")->delimiter(',');
  gen_cmd->add_option("--N,-N", ga.N, "Number of samples")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--sigma", ga.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", ga.seed, "Noise seed");
  gen_cmd->add_option("--out,-o", ga.out, "Output file (default stdout)");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << GOR_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "gor: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*realize_cmd) return cmd_realize(ra, out);
    if (*mc_cmd) return cmd_montecarlo(ma, out);
    return cmd_gendata(ga, out);
  } catch (const NoRealSolutionError& e) {
    err << "gor: no real solution: " << e.what() << '\n';
    return kNoRealSolution;
  } catch (const SolverError& e) {
    err << "gor: solver failed: " << e.what() << '\n';
    return kNoRealSolution;
  } catch (const std::exception& e) {
    err << "gor: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace gor::cli

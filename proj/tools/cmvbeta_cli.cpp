// cmvbeta: sample ensembles, run validation suites, evaluate closed forms,
// histogram sample files and export operators as JSON.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmvbeta/cmvbeta.hpp"
#include "cmvbeta/io.hpp"
#include "cmvbeta/validation.hpp"

namespace {

using namespace cmvbeta;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt15(double x) { return io::format_double(x, 15); }

const CLI::Validator kAboveMinusOne =
    CLI::Validator([](std::string& s) -> std::string {
      try {
        return std::stod(s) > -1.0 ? "" : "value must exceed -1";
      } catch (...) {
        return "not a number";
      }
    }, "> -1");

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---- sample -------------------------------------------------------------

struct SampleArgs {
  std::string kind;
  std::size_t n = 1;
  double beta = 2.0;
  double a = 0.0;
  double b = 0.0;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  bool emit_alphas = false;
  bool emit_weights = false;
  std::string out;
  std::string format = "csv";
  std::size_t threads = 1;
  std::string save_config;
};

int cmd_sample(const SampleArgs& s) {
  io::RunConfig cfg;
  cfg.command = "sample";
  cfg.target = s.kind;
  cfg.spec = EnsembleSpec{s.n, s.beta, s.a, s.b, s.seed};
  cfg.count = s.count;
  cfg.format = s.format;
  cfg.emit_alphas = s.emit_alphas;
  cfg.threads = s.threads;
  cfg.out = s.out;
  if (cfg.out.empty()) {
    const char* dir = std::getenv("CMVBETA_OUTPUT_DIR");
    std::filesystem::path p = dir && *dir ? dir : ".";
    p /= "samples_" + s.kind + "_n" + std::to_string(s.n) + "_seed" + std::to_string(s.seed) + "." + s.format;
    cfg.out = p.string();
  }

  const SampleOptions opts{s.threads, s.emit_alphas, s.emit_weights};
  const auto t0 = std::chrono::steady_clock::now();
  const SampleBatch batch = s.kind == "circular" ? sample_circular(cfg.spec, s.count, opts)
                                                 : sample_jacobi(cfg.spec, s.count, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream os;
  if (s.format == "csv")
    io::write_csv(os, batch);
  else
    io::write_jsonl(os, batch);
  write_text(cfg.out, os.str());
  if (!s.save_config.empty()) write_text(s.save_config, io::to_json(cfg).dump(2) + "\n");

  std::printf("sampled %zu %s draws (n=%zu, beta=%s) in %.3f s (%.0f draws/s) -> %s\n", s.count,
              s.kind.c_str(), s.n, fmt15(s.beta).c_str(), secs, secs > 0 ? s.count / secs : 0.0,
              cfg.out.c_str());
  return kExitOk;
}

// ---- validate -----------------------------------------------------------

struct ValidateArgs {
  std::string suite;
  bool fast = false;
  std::string report;
  std::uint64_t seed = validation::Options{}.seed;
  std::size_t threads = 1;
  std::vector<std::string> tolerances;
};

int cmd_validate(const ValidateArgs& v) {
  validation::Options opts;
  opts.fast = v.fast;
  opts.seed = v.seed;
  opts.threads = v.threads;
  for (const std::string& t : v.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects name=value, got '" + t + "'");
    try {
      opts.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (...) {
      throw UsageError("--tol value is not a number in '" + t + "'");
    }
  }
  const auto results = validation::run_suite(v.suite, opts);
  const json report = validation::report_json(v.suite, opts, results);

  std::fprintf(stderr, "%-28s %-4s %12s %12s %8s\n", "check", "ok", "measured", "tolerance", "seconds");
  for (const auto& r : results)
    std::fprintf(stderr, "%-28s %-4s %12.4g %2s%10.3g %8.2f%s%s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                 r.measured, r.sense == validation::Sense::at_most ? "<=" : ">=", r.tolerance, r.seconds,
                 r.error.empty() ? "" : "  ", r.error.c_str());

  if (v.report.empty())
    std::cout << report.dump(2) << '\n';
  else
    write_text(v.report, report.dump(2) + "\n");
  return validation::all_passed(results) ? kExitOk : kExitFail;
}

// ---- eval ---------------------------------------------------------------

std::string format_polynomial(const RealMonicPolynomial& p) {
  const std::size_t d = p.degree();
  auto mono = [](std::size_t k) { return k == 0 ? std::string() : k == 1 ? std::string("x") : "x^" + std::to_string(k); };
  std::string s = d == 0 ? "1" : mono(d);
  for (std::size_t k = d; k-- > 0;) {
    const double c = p[k];
    if (c == 0.0) continue;
    s += c < 0.0 ? " - " : " + ";
    s += fmt15(std::abs(c));
    if (k > 0) s += " " + mono(k);
  }
  return s;
}

// ---- hist ---------------------------------------------------------------

struct HistArgs {
  std::string input;
  std::string stat = "angle";
  std::size_t bins = 50;
  std::string out;
};

int cmd_hist(const HistArgs& h) {
  std::istringstream in(read_text(h.input));
  SampleBatch batch;
  try {
    batch = io::read_batch(in);
  } catch (const io::FormatError& e) {
    throw IoError(std::string("malformed sample file: ") + e.what());
  }
  const bool circular = batch.kind == EnsembleKind::circular;
  if ((h.stat == "eigenvalue") == circular)
    throw UsageError("--stat " + h.stat + " does not apply to a " + to_string(batch.kind) + " sample file");
  std::vector<double> values;
  double lo = 0.0, hi = 2.0 * std::numbers::pi;
  for (const Draw& d : batch.draws) {
    if (h.stat == "gap") {
      const auto g = sorted_gaps(d.points);
      values.insert(values.end(), g.begin(), g.end());
    } else {
      values.insert(values.end(), d.points.begin(), d.points.end());
    }
  }
  if (h.stat == "eigenvalue") {
    lo = -2.0;
    hi = 2.0;
    for (double& x : values)
      if (std::abs(x) > 2.0 && std::abs(x) <= 2.0 + 1e-10) x = std::copysign(2.0, x);
  }
  std::vector<io::HistogramBin> bins;
  try {
    bins = io::histogram(values, lo, hi, h.bins);
  } catch (const ParameterError& e) {
    throw IoError(std::string("sample file has out-of-range values: ") + e.what());
  }
  std::ostringstream os;
  io::write_histogram_csv(os, bins);
  if (h.out.empty())
    std::cout << os.str();
  else
    write_text(h.out, os.str());
  return kExitOk;
}

// ---- export -------------------------------------------------------------

VerblunskySeq alphas_from_flags(const std::vector<double>& re, const std::vector<double>& im) {
  if (re.empty()) throw UsageError("--re needs at least one value");
  if (!im.empty() && im.size() != re.size()) throw UsageError("--im must have as many values as --re");
  std::vector<cplx> al(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) al[k] = cplx(re[k], im.empty() ? 0.0 : im[k]);
  try {
    return VerblunskySeq(std::move(al));
  } catch (const ParameterError& e) {
    throw UsageError(std::string("--re/--im: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse matrix models for circular and Jacobi beta-ensembles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cmvbeta 1.0.0");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "draw eigenvalue configurations to a file");
  sample->add_option("kind", sa.kind, "ensemble")->required()->check(CLI::IsMember({"circular", "jacobi"}));
  sample->add_option("--n", sa.n, "number of particles")->required()->check(CLI::PositiveNumber);
  sample->add_option("--beta", sa.beta, "inverse temperature")->required()->check(CLI::PositiveNumber);
  sample->add_option("--a", sa.a, "Jacobi exponent at x = 2")->check(kAboveMinusOne);
  sample->add_option("--b", sa.b, "Jacobi exponent at x = -2")->check(kAboveMinusOne);
  sample->add_option("--count", sa.count, "number of draws")->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", sa.seed, "64-bit seed");
  sample->add_flag("--emit-alphas", sa.emit_alphas, "store Verblunsky coefficients (jsonl only)");
  sample->add_flag("--emit-weights", sa.emit_weights, "store spectral weights (jsonl only)");
  sample->add_option("--out", sa.out, "output file (default: $CMVBETA_OUTPUT_DIR or . )");
  sample->add_option("--format", sa.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sample->add_option("--threads", sa.threads, "worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--save-config", sa.save_config, "also write the run configuration as JSON");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "run verification suites");
  validate->add_option("suite", va.suite, "identities | integrals | jacobians | ensembles | all")->required();
  validate->add_flag("--fast", va.fast, "n = 2 oracle comparisons only");
  validate->add_option("--report", va.report, "write the JSON report here instead of stdout");
  validate->add_option("--seed", va.seed, "base seed");
  validate->add_option("--threads", va.threads, "sampling threads")->check(CLI::PositiveNumber);
  validate->add_option("--tol", va.tolerances, "override a tolerance: name=value (repeatable)");

  auto* eval = app.add_subcommand("eval", "evaluate closed-form quantities");
  eval->require_subcommand(1);
  std::size_t en = 1;
  double ebeta = 2.0, ea = 0.0, eb = 0.0, ex = 1.0, ey = 1.0, ez = 1.0;
  bool interval = false;
  std::vector<double> ep;
  auto* e_part = eval->add_subcommand("partition", "Z_{n,beta} of the circular ensemble");
  e_part->add_option("--n", en)->required()->check(CLI::PositiveNumber);
  e_part->add_option("--beta", ebeta)->required()->check(CLI::PositiveNumber);
  auto* e_sel = eval->add_subcommand("selberg", "Selberg integral over [0,1]^n");
  e_sel->add_option("--n", en)->required()->check(CLI::PositiveNumber);
  e_sel->add_option("--x", ex)->required()->check(CLI::PositiveNumber);
  e_sel->add_option("--y", ey)->required()->check(CLI::PositiveNumber);
  e_sel->add_option("--z", ez)->required()->check(CLI::NonNegativeNumber);
  e_sel->add_flag("--interval", interval, "use the [-2,2]^n normalization");
  auto* e_char = eval->add_subcommand("charpoly", "expected characteristic polynomial of the Jacobi model");
  e_char->add_option("--n", en)->required()->check(CLI::PositiveNumber);
  e_char->add_option("--beta", ebeta)->required()->check(CLI::PositiveNumber);
  e_char->add_option("--a", ea)->check(kAboveMinusOne);
  e_char->add_option("--b", eb)->check(kAboveMinusOne);
  auto* e_dir = eval->add_subcommand("dirichlet", "Dirichlet moment E prod mu_j^p_j on the simplex");
  e_dir->add_option("--p", ep, "exponents")->required()->expected(1, -1)->check(kAboveMinusOne);

  HistArgs ha;
  auto* hist = app.add_subcommand("hist", "histogram a statistic of a sample file");
  hist->add_option("input", ha.input, "sample file (csv or jsonl)")->required();
  hist->add_option("--stat", ha.stat, "angle | gap | eigenvalue")->check(CLI::IsMember({"angle", "gap", "eigenvalue"}));
  hist->add_option("--bins", ha.bins)->check(CLI::PositiveNumber);
  hist->add_option("--out", ha.out, "output CSV (default stdout)");

  auto* exp = app.add_subcommand("export", "print operators built from Verblunsky coefficients as JSON");
  exp->require_subcommand(1);
  std::vector<double> xre, xim;
  std::string xout;
  auto add_alpha_flags = [&](CLI::App* c) {
    c->add_option("--re", xre, "real parts of alpha_0..alpha_{m-1}")->required()->expected(1, -1);
    c->add_option("--im", xim, "imaginary parts")->expected(1, -1);
    c->add_option("--out", xout, "output file (default stdout)");
  };
  auto* x_cmv = exp->add_subcommand("cmv", "L, M and LM");
  auto* x_hess = exp->add_subcommand("hessenberg", "Hessenberg matrix H");
  auto* x_jac = exp->add_subcommand("jacobi", "Jacobi operator from real alpha_0..alpha_{2n-1}");
  add_alpha_flags(x_cmv);
  add_alpha_flags(x_hess);
  add_alpha_flags(x_jac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample) {
      if ((sa.emit_alphas || sa.emit_weights) && sa.format != "jsonl")
        throw UsageError("--emit-alphas/--emit-weights require --format jsonl");
      return cmd_sample(sa);
    }
    if (*validate) {
      const auto& names = validation::suite_names();
      if (std::find(names.begin(), names.end(), va.suite) == names.end())
        throw UsageError("unknown suite '" + va.suite + "'");
      return cmd_validate(va);
    }
    if (*eval) {
      if (*e_part) std::cout << fmt15(partition_circular(en, ebeta)) << '\n';
      if (*e_sel)
        std::cout << fmt15(interval ? selberg_interval_value(en, ex, ey, ez) : selberg_value(en, ex, ey, ez)) << '\n';
      if (*e_char) std::cout << format_polynomial(expected_charpoly(en, ebeta, ea, eb)) << '\n';
      if (*e_dir) std::cout << fmt15(dirichlet_moment(ep)) << '\n';
      return kExitOk;
    }
    if (*hist) return cmd_hist(ha);
    if (*exp) {
      json out;
      const VerblunskySeq v = alphas_from_flags(xre, xim);
      if (*x_cmv) {
        const CMVOperator op(v);
        out = {{"L", io::matrix_to_json(op.L())}, {"M", io::matrix_to_json(op.M())},
               {"LM", io::matrix_to_json(op.lm())}};
      } else if (*x_hess) {
        out = io::matrix_to_json(build_hessenberg(v).H);
      } else {
        if (!xim.empty()) throw UsageError("export jacobi takes real coefficients only (drop --im)");
        if (v.size() % 2 != 0) throw UsageError("--re must list an even number 2n of coefficients");
        try {
          out = io::jacobi_to_json(geronimus(v, v.size() / 2));
        } catch (const ParameterError& e) {
          throw UsageError(std::string("--re: ") + e.what());
        }
      }
      if (xout.empty())
        std::cout << out.dump(2) << '\n';
      else
        write_text(xout, out.dump(2) + "\n");
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

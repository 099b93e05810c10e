#pragma once

// File formats: sample batches as CSV or JSON lines, matrices and Jacobi
// operators as JSON, histograms as CSV, and the CLI run configuration.
//
// CSV: header `draw,theta_1,...,theta_n` (circular) or `draw,x_1,...,x_n`
// (Jacobi), one draw per row, points ascending.
//
// JSON lines: a header record
//   {"schema":"cmvbeta.samples","version":1,"kind":...,"n":...,"beta":...,
//    "a":...,"b":...,"seed":...,"count":...}
// followed by one record per draw
//   {"draw":i,"points":[...],"alphas":[[re,im],...],"weights":[...]}
// where "alphas" and "weights" are present only when requested.
//
// Doubles are written with 17 significant digits so files round-trip.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/ensembles.hpp"
#include "cmvbeta/errors.hpp"
#include "cmvbeta/szego_map.hpp"

namespace cmvbeta::io {

using nlohmann::json;

inline constexpr int kSampleSchemaVersion = 1;
inline constexpr int kConfigSchemaVersion = 1;

/// Input that cannot be parsed as the expected format.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline void write_csv(std::ostream& os, const SampleBatch& batch) {
  const char* label = batch.kind == EnsembleKind::circular ? "theta_" : "x_";
  os << "draw";
  for (std::size_t j = 1; j <= batch.spec.n; ++j) os << ',' << label << j;
  os << '\n';
  for (std::size_t i = 0; i < batch.draws.size(); ++i) {
    os << i;
    for (double p : batch.draws[i].points) os << ',' << format_double(p);
    os << '\n';
  }
}

inline json header_record(const SampleBatch& batch) {
  return json{{"schema", "cmvbeta.samples"},
              {"version", kSampleSchemaVersion},
              {"kind", to_string(batch.kind)},
              {"n", batch.spec.n},
              {"beta", batch.spec.beta},
              {"a", batch.spec.a},
              {"b", batch.spec.b},
              {"seed", batch.spec.seed},
              {"count", batch.draws.size()}};
}

inline void write_jsonl(std::ostream& os, const SampleBatch& batch) {
  os << header_record(batch).dump() << '\n';
  for (std::size_t i = 0; i < batch.draws.size(); ++i) {
    const Draw& d = batch.draws[i];
    json rec{{"draw", i}, {"points", d.points}};
    if (!d.alphas.empty()) {
      json al = json::array();
      for (const cplx& a : d.alphas) al.push_back({a.real(), a.imag()});
      rec["alphas"] = std::move(al);
    }
    if (!d.weights.empty()) rec["weights"] = d.weights;
    os << rec.dump() << '\n';
  }
}

/// Reads either format back. For CSV the spec fields other than n and the
/// kind are unknown and left at their defaults.
inline SampleBatch read_batch(std::istream& is) {
  SampleBatch batch;
  std::string line;
  if (!std::getline(is, line) || line.empty()) throw FormatError("empty sample file");
  if (line.front() == '{') {
    json head;
    try {
      head = json::parse(line);
      if (head.at("schema") != "cmvbeta.samples") throw FormatError("unknown schema");
      if (head.at("version").get<int>() > kSampleSchemaVersion)
        throw FormatError("unsupported schema version");
      const std::string kind = head.at("kind");
      if (kind != "circular" && kind != "jacobi") throw FormatError("unknown ensemble kind");
      batch.kind = kind == "circular" ? EnsembleKind::circular : EnsembleKind::jacobi;
      batch.spec.n = head.at("n");
      batch.spec.beta = head.at("beta");
      batch.spec.a = head.at("a");
      batch.spec.b = head.at("b");
      batch.spec.seed = head.at("seed");
      while (std::getline(is, line)) {
        if (line.empty()) continue;
        const json rec = json::parse(line);
        Draw d;
        d.points = rec.at("points").get<std::vector<double>>();
        if (d.points.size() != batch.spec.n) throw FormatError("draw has wrong length");
        if (rec.contains("alphas"))
          for (const auto& a : rec["alphas"]) d.alphas.emplace_back(a.at(0), a.at(1));
        if (rec.contains("weights")) d.weights = rec["weights"].get<std::vector<double>>();
        batch.draws.push_back(std::move(d));
      }
    } catch (const json::exception& e) {
      throw FormatError(std::string("malformed JSON lines: ") + e.what());
    }
    return batch;
  }

  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  if (cols.size() < 2 || cols[0] != "draw") throw FormatError("CSV header must start with 'draw'");
  if (cols[1].rfind("theta_", 0) == 0)
    batch.kind = EnsembleKind::circular;
  else if (cols[1].rfind("x_", 0) == 0)
    batch.kind = EnsembleKind::jacobi;
  else
    throw FormatError("unrecognized CSV column " + cols[1]);
  batch.spec.n = cols.size() - 1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    Draw d;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw FormatError("non-numeric CSV cell '" + cell + "'");
      }
      if (used != cell.size()) throw FormatError("non-numeric CSV cell '" + cell + "'");
      d.points.push_back(v);
    }
    if (d.points.size() != batch.spec.n) throw FormatError("CSV row has wrong length");
    batch.draws.push_back(std::move(d));
  }
  return batch;
}

/// {"rows": r, "cols": c, "layout": "row-major [re, im]", "data": [[re, im], ...]}
inline json matrix_to_json(const MatrixC& A) {
  json data = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) data.push_back({A(i, j).real(), A(i, j).imag()});
  return json{{"rows", A.rows()}, {"cols", A.cols()}, {"layout", "row-major [re, im]"}, {"data", data}};
}

inline MatrixC matrix_from_json(const json& j) {
  const auto r = j.at("rows").get<Eigen::Index>(), c = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != r * c) throw FormatError("matrix data has wrong size");
  MatrixC A(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const auto& e = data[static_cast<std::size_t>(i * c + k)];
      A(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return A;
}

inline json jacobi_to_json(const JacobiOperator& J) { return json{{"b", J.b}, {"a", J.a}}; }

inline JacobiOperator jacobi_from_json(const json& j) {
  return JacobiOperator(j.at("b").get<std::vector<double>>(), j.at("a").get<std::vector<double>>());
}

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
  double density = 0.0;
};

/// Fixed-width bins on [lo, hi]; values equal to hi land in the last bin and
/// values outside are an error.
inline std::vector<HistogramBin> histogram(const std::vector<double>& values, double lo, double hi,
                                           std::size_t bins) {
  detail::require(bins >= 1 && hi > lo, "histogram needs at least one bin and hi > lo");
  detail::require(!values.empty(), "histogram needs data");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out[k].left = lo + width * static_cast<double>(k);
    out[k].right = k + 1 == bins ? hi : lo + width * static_cast<double>(k + 1);
  }
  for (double v : values) {
    if (!(v >= lo && v <= hi)) throw ParameterError("value outside histogram range");
    auto k = static_cast<std::size_t>((v - lo) / width);
    out[std::min(k, bins - 1)].count++;
  }
  const double total = static_cast<double>(values.size());
  for (auto& b : out) b.density = static_cast<double>(b.count) / (total * (b.right - b.left));
  return out;
}

inline void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& h) {
  os << "bin_left,bin_right,count,density\n";
  for (const auto& b : h)
    os << format_double(b.left) << ',' << format_double(b.right) << ',' << b.count << ','
       << format_double(b.density) << '\n';
}

/// Everything needed to reproduce one CLI invocation.
struct RunConfig {
  std::string command;
  /// Ensemble kind for `sample`, suite for `validate`, quantity for `eval`.
  std::string target;
  EnsembleSpec spec;
  std::size_t count = 0;
  std::string out;
  std::string format = "csv";
  bool emit_alphas = false;
  bool fast = false;
  std::size_t threads = 1;
  std::map<std::string, double> tolerances;

  bool operator==(const RunConfig&) const = default;
};

inline json to_json(const RunConfig& c) {
  return json{{"version", kConfigSchemaVersion},
              {"command", c.command},
              {"target", c.target},
              {"n", c.spec.n},
              {"beta", c.spec.beta},
              {"a", c.spec.a},
              {"b", c.spec.b},
              {"seed", c.spec.seed},
              {"count", c.count},
              {"out", c.out},
              {"format", c.format},
              {"emit_alphas", c.emit_alphas},
              {"fast", c.fast},
              {"threads", c.threads},
              {"tolerances", c.tolerances}};
}

/// Inverse of to_json. Unknown keys and wrong types are rejected.
inline RunConfig run_config_from_json(const json& j) {
  static const std::vector<std::string> known{
      "version", "command", "target", "n",           "beta", "a",       "b",         "seed",
      "count",   "out",     "format", "emit_alphas", "fast", "threads", "tolerances"};
  if (!j.is_object()) throw FormatError("run config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw FormatError("unknown run config key '" + key + "'");
  RunConfig c;
  try {
    if (j.contains("version") && j["version"].get<int>() > kConfigSchemaVersion)
      throw FormatError("unsupported run config version");
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("command", c.command);
    get("target", c.target);
    get("n", c.spec.n);
    get("beta", c.spec.beta);
    get("a", c.spec.a);
    get("b", c.spec.b);
    get("seed", c.spec.seed);
    get("count", c.count);
    get("out", c.out);
    get("format", c.format);
    get("emit_alphas", c.emit_alphas);
    get("fast", c.fast);
    get("threads", c.threads);
    get("tolerances", c.tolerances);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad run config: ") + e.what());
  }
  if (c.format != "csv" && c.format != "jsonl") throw FormatError("format must be csv or jsonl");
  return c;
}

}  // namespace cmvbeta::io

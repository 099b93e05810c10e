#include <gtest/gtest.h>

#include <sstream>

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/io.hpp"

using namespace cmvbeta;

TEST(FormatDouble, RoundTripsExactly) {
  RngStream rng(31, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.next_u64() % 40) - 20);
    EXPECT_EQ(std::stod(io::format_double(x)), x);
  }
}

TEST(Samples, CsvRoundTrip) {
  const auto batch = sample_jacobi({4, 1.5, 0.5, 0.25, 3}, 25);
  std::stringstream ss;
  io::write_csv(ss, batch);
  const auto back = io::read_batch(ss);
  EXPECT_EQ(back.kind, EnsembleKind::jacobi);
  EXPECT_EQ(back.spec.n, 4u);
  ASSERT_EQ(back.draws.size(), 25u);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(back.draws[i].points, batch.draws[i].points);
}

TEST(Samples, JsonlRoundTripWithExtras) {
  const auto batch = sample_circular({3, 2.5, 0, 0, 4}, 10, {1, true, true});
  std::stringstream ss;
  io::write_jsonl(ss, batch);
  const auto back = io::read_batch(ss);
  EXPECT_EQ(back.kind, EnsembleKind::circular);
  EXPECT_EQ(back.spec, batch.spec);
  ASSERT_EQ(back.draws.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(back.draws[i].points, batch.draws[i].points);
    EXPECT_EQ(back.draws[i].alphas, batch.draws[i].alphas);
    EXPECT_EQ(back.draws[i].weights, batch.draws[i].weights);
  }
}

TEST(Samples, MalformedInputsAreRejected) {
  for (const char* text : {"", "foo,bar\n1,2\n", "draw,theta_1\n0,abc\n", "draw,theta_1,theta_2\n0,1.0\n",
                           "{\"schema\":\"other\"}\n", "{\"schema\":\"cmvbeta.samples\",\"version\":1}\n",
                           "draw,theta_1\n0,1.5x\n"}) {
    std::stringstream ss(text);
    EXPECT_THROW(io::read_batch(ss), io::FormatError) << text;
  }
}

TEST(Matrix, JsonRoundTrip) {
  const MatrixC U = build_cmv(VerblunskySeq({cplx(0.1, 0.2), cplx(-0.3, 0.4), cplx(0, 1)})).lm();
  const auto j = io::matrix_to_json(U);
  EXPECT_EQ(j.at("layout"), "row-major [re, im]");
  const MatrixC back = io::matrix_from_json(io::json::parse(j.dump()));
  EXPECT_EQ(back, U);
  auto bad = j;
  bad["rows"] = 4;
  EXPECT_THROW(io::matrix_from_json(bad), io::FormatError);
}

TEST(Jacobi, JsonRoundTrip) {
  const JacobiOperator J({0.1, 0.2, -0.3}, {1.0, 0.5});
  const JacobiOperator K = io::jacobi_from_json(io::json::parse(io::jacobi_to_json(J).dump()));
  EXPECT_EQ(K.b, J.b);
  EXPECT_EQ(K.a, J.a);
}

TEST(Histogram, DensityIntegratesToOne) {
  RngStream rng(32, 0);
  std::vector<double> v;
  for (int i = 0; i < 12345; ++i) v.push_back(2.0 * std::numbers::pi * rng.uniform());
  for (std::size_t bins : {1, 7, 64}) {
    const auto h = io::histogram(v, 0.0, 2.0 * std::numbers::pi, bins);
    double mass = 0.0;
    std::size_t count = 0;
    for (const auto& b : h) {
      mass += b.density * (b.right - b.left);
      count += b.count;
    }
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_EQ(count, v.size());
  }
  EXPECT_THROW(io::histogram(v, 1.0, 1.0, 3), ParameterError);
  EXPECT_THROW(io::histogram({}, 0.0, 1.0, 3), ParameterError);
}

TEST(Histogram, CsvColumns) {
  std::ostringstream os;
  io::write_histogram_csv(os, io::histogram({0.1, 0.6, 0.7}, 0.0, 1.0, 2));
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "bin_left,bin_right,count,density");
  EXPECT_NE(s.find("0.5,1,2,"), std::string::npos);
}

TEST(RunConfig, RoundTripAndUnknownKeys) {
  io::RunConfig c;
  c.command = "sample";
  c.target = "jacobi";
  c.spec = {5, 2.5, 0.5, -0.25, 99};
  c.count = 1000;
  c.out = "x.jsonl";
  c.format = "jsonl";
  c.emit_alphas = true;
  c.threads = 3;
  c.tolerances = {{"det_cmv", 1e-7}};
  const auto back = io::run_config_from_json(io::json::parse(io::to_json(c).dump()));
  EXPECT_EQ(back, c);

  auto j = io::to_json(c);
  j["colour"] = "red";
  EXPECT_THROW(io::run_config_from_json(j), io::FormatError);
  auto k = io::to_json(c);
  k["n"] = "five";
  EXPECT_THROW(io::run_config_from_json(k), io::FormatError);
  auto f = io::to_json(c);
  f["format"] = "xml";
  EXPECT_THROW(io::run_config_from_json(f), io::FormatError);
  EXPECT_THROW(io::run_config_from_json(io::json::array()), io::FormatError);
}

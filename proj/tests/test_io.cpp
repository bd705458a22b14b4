#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "splc/io.hpp"
#include "support/oracles.hpp"

using splc::SampleSet;
using splc::Spline;

TEST_CASE("JSON round trip is bit exact") {
  std::mt19937 rng(109);
  const auto kv = oracle::random_open(rng, 3, 4, 2);
  const Spline s = oracle::random_spline(rng, kv);
  const Spline back = splc::spline_from_json(splc::spline_to_json(s));
  CHECK(back.space() == s.space());
  CHECK(back.control_points() == s.control_points());
}

TEST_CASE("file round trip and missing-file error") {
  std::mt19937 rng(113);
  const auto kv = oracle::random_open(rng, 2, 3, 1);
  const Spline s = oracle::random_spline(rng, kv);
  const std::string path = "io_roundtrip_tmp.json";
  splc::write_spline_file(s, path);
  const Spline back = splc::read_spline_file(path);
  CHECK(back.control_points() == s.control_points());
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)splc::read_spline_file("no_such_file.json"), std::ios_base::failure);
}

TEST_CASE("sample CSV reader skips a header and parses rows") {
  const std::string path = "io_samples_tmp.csv";
  {
    std::ofstream out(path);
    out << "x,y\n0,1\n0.5,2\n1,0.5\n";
  }
  const SampleSet data = splc::read_samples_csv(path);
  std::remove(path.c_str());
  REQUIRE(data.x.size() == 3);
  CHECK(data.x[1] == 0.5);
  CHECK(data.y[2] == 0.5);
}

TEST_CASE("piecewise linear interpolant in the C0 cubic basis") {
  SampleSet data;
  for (int i = 0; i <= 10; ++i) {
    data.x.push_back(0.1 * i);
    data.y.push_back(std::sin(3.0 * data.x.back()));
  }
  const Spline s = splc::samples_to_c0_cubic(data);
  CHECK(s.degree() == 3);
  CHECK(s.space().num_interior_knots() == 27);
  // exact at the samples and piecewise linear in between
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    CHECK(s(data.x[i]) == doctest::Approx(data.y[i]).epsilon(1e-13));
  }
  for (int i = 0; i < 10; ++i) {
    const double xm = 0.05 + 0.1 * i;
    CHECK(s(xm) == doctest::Approx(0.5 * (data.y[i] + data.y[i + 1])).epsilon(1e-12));
  }

  SampleSet bad = data;
  bad.x[4] = bad.x[3];
  CHECK_THROWS_AS((void)splc::samples_to_c0_cubic(bad), splc::error);
}

TEST_CASE("builtin functions have the documented domains") {
  CHECK(splc::builtin_domain("runge") == std::pair<double, double>{-5.0, 5.0});
  CHECK(splc::builtin_domain("root5") == std::pair<double, double>{-1.0, 1.0});
  CHECK(splc::builtin_function("runge")(0.0) == doctest::Approx(1.0));
  CHECK(splc::builtin_function("root5")(-1.0) == doctest::Approx(-1.0));
  CHECK_THROWS((void)splc::builtin_function("nope"));
}

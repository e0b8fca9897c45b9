#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "zeta_cover/error.hpp"
#include "zeta_cover/series_io.hpp"
#include "zeta_cover/torus.hpp"

using namespace zeta_cover;

TEST_CASE("emit_series CSV") {
  const std::vector<std::size_t> ns{10, 100};
  const auto s = torus_limit_series(1.0, ns);
  const auto csv = emit_series(s, SeriesFormat::Csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "N,density,abs_error");
  std::getline(in, line);
  CHECK(line.rfind("10,-0.58668", 0) == 0);
  const auto first_comma = line.find(','), second_comma = line.rfind(',');
  CHECK(std::stod(line.substr(first_comma + 1, second_comma - first_comma - 1)) == s.entries[0].density);
  std::getline(in, line);
  CHECK(line.rfind("100,-0.95509", 0) == 0);
  CHECK(!std::getline(in, line));
}

TEST_CASE("emit_series JSON round trip") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 50; ++trial) {
    ConvergenceSeries s;
    std::size_t n = 1;
    for (int i = 0; i < 1 + trial % 7; ++i) {
      n += 1 + rng() % 1000;
      s.entries.push_back({n, u(rng) * std::pow(10.0, trial % 30 - 15), std::abs(u(rng))});
    }
    s.limit = u(rng);
    s.limit_error = std::abs(u(rng)) * 1e-12;
    const auto back = parse_series_json(emit_series(s, SeriesFormat::Json));
    REQUIRE(back.entries.size() == s.entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      CHECK(back.entries[i].n == s.entries[i].n);
      CHECK(back.entries[i].density == s.entries[i].density);
      CHECK(back.entries[i].abs_error == s.entries[i].abs_error);
    }
    CHECK(back.limit == s.limit);
    CHECK(back.limit_error == s.limit_error);
  }
  const auto limit = parse_series_json(
      emit_series(torus_limit_series(1.0, std::vector<std::size_t>{10}), SeriesFormat::Json));
  CHECK(limit.limit == -kPi / 3);
}

TEST_CASE("emit_series errors") {
  CHECK_THROWS_AS(emit_series(ConvergenceSeries{}, SeriesFormat::Csv), Error);
  CHECK_THROWS_AS(parse_series_json("{\"entries\": 3}"), Error);
  CHECK_THROWS_AS(parse_series_json("not json"), Error);
  ConvergenceSeries s;
  s.entries.push_back({4, 0.5, 0.5});
  try {
    write_series(s, SeriesFormat::Csv, "/nonexistent-dir/x.csv");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
  const std::string path = "zeta_cover_io_test.json";
  write_series(s, SeriesFormat::Json, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(parse_series_json(ss.str()).entries.at(0).n == 4);
  std::remove(path.c_str());
}

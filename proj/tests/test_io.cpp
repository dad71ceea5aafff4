// File formats: bit-exact double round trips through the 17-digit text
// encoding, format sniffing, and rejection of malformed tables.
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/io.hpp"
#include "doctest.h"

using namespace minkflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("minkflow_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("doubles survive the text round trip bit-exactly") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-60, 60);
  for (int k = 0; k < 500; ++k) {
    const double v = std::ldexp(mant(rng), expo(rng));
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(io::format_double(0.0) == "0");
}

TEST_CASE("grid function round trip") {
  TempDir dir;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(0.5, 2.0);
  std::vector<double> v(64);
  for (double& x : v) x = val(rng);
  const GridFunction g(std::move(v));
  const std::string path = dir.file("g.grid");
  io::write_grid_function(path, g);
  const GridFunction back = io::read_grid_function(path);
  REQUIRE(back.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == g[i]);
  CHECK(io::looks_like_grid_function(path));
}

TEST_CASE("polygon round trip and sniffing") {
  TempDir dir;
  const Polygon p({{1.25, 1.5}, {-0.75, 1.0}, {-1.0, -1.0}, {1.0, -1.25}});
  const std::string path = dir.file("p.poly");
  io::write_polygon(path, p);
  const Polygon back = io::read_polygon(path);
  REQUIRE(back.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(back.vertex(i).x == p.vertex(i).x);
    CHECK(back.vertex(i).y == p.vertex(i).y);
  }
  CHECK_FALSE(io::looks_like_grid_function(path));
}

TEST_CASE("measure round trips in radians and degrees") {
  TempDir dir;
  const DiscreteMeasure mu({0.0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2},
                           {1.0, 2.0, 1.0, 2.0});
  const std::string rad = dir.file("mu.atoms");
  io::write_measure_atoms(rad, mu);
  const DiscreteMeasure back = io::read_measure_atoms(rad);
  REQUIRE(back.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(back.direction(i) == mu.direction(i));
    CHECK(back.weight(i) == mu.weight(i));
  }

  const std::string deg = dir.file("mu_deg.csv");
  io::write_atoms_degrees(deg, mu);
  const DiscreteMeasure back2 = io::read_atoms_degrees(deg);
  REQUIRE(back2.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(back2.direction(i) == doctest::Approx(mu.direction(i)).epsilon(1e-14));

  // headerless degree input is accepted
  FILE* fh = std::fopen(dir.file("plain.csv").c_str(), "w");
  std::fputs("0,1\n90,1\n180,1\n270,1\n", fh);
  std::fclose(fh);
  const DiscreteMeasure plain = io::read_atoms_degrees(dir.file("plain.csv"));
  CHECK(plain.size() == 4);
  CHECK(plain.direction(1) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("density and trace round trips") {
  TempDir dir;
  const GridFunction d = GridFunction::constant(32, 0.60653065971263342);
  io::write_density(dir.file("d.csv"), d);
  const GridFunction dback = io::read_density(dir.file("d.csv"));
  for (std::size_t i = 0; i < 32; ++i) CHECK(dback[i] == d[i]);

  std::vector<TraceRow> rows(3);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].t = 0.5 * static_cast<double>(k);
    rows[k].phi = 4.0 - static_cast<double>(k) * 0.125;
    rows[k].residual = std::ldexp(1.0, -static_cast<int>(k) - 2);
    rows[k].h_min = 0.9;
    rows[k].h_max = 1.1;
    rows[k].b_min = 0.8;
    rows[k].b_max = 1.2;
  }
  io::write_trace(dir.file("trace.csv"), rows);
  const std::vector<TraceRow> tback = io::read_trace(dir.file("trace.csv"));
  REQUIRE(tback.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(tback[k].t == rows[k].t);
    CHECK(tback[k].phi == rows[k].phi);
    CHECK(tback[k].residual == rows[k].residual);
    CHECK(tback[k].b_max == rows[k].b_max);
  }
}

TEST_CASE("key-value files keep order and survive reread") {
  TempDir dir;
  const std::vector<std::pair<std::string, std::string>> kv{
      {"status", "converged"}, {"residual", "1e-07"}, {"steps", "123"}};
  io::write_key_values(dir.file("summary.txt"), kv);
  const auto back = io::read_key_values(dir.file("summary.txt"));
  REQUIRE(back.size() == kv.size());
  for (std::size_t i = 0; i < kv.size(); ++i) {
    CHECK(back[i].first == kv[i].first);
    CHECK(back[i].second == kv[i].second);
  }
}

TEST_CASE("missing files raise the io error, malformed content the parse error") {
  TempDir dir;
  CHECK_THROWS_AS(io::read_grid_function(dir.file("missing.grid")), IoError);
  CHECK_THROWS_AS(io::read_polygon(dir.file("missing.poly")), IoError);

  FILE* fh = std::fopen(dir.file("bad.grid").c_str(), "w");
  std::fputs("theta,value\n0,1\n0.5,1\n", fh);  // far too few rows for a grid
  std::fclose(fh);
  CHECK_THROWS_AS(io::read_grid_function(dir.file("bad.grid")), InvalidArgumentError);

  // right row count, but one angle off the uniform grid
  fh = std::fopen(dir.file("skew.grid").c_str(), "w");
  std::fputs("theta,value\n", fh);
  for (int i = 0; i < 16; ++i) {
    const double t = 2 * std::numbers::pi * i / 16 + (i == 3 ? 0.01 : 0.0);
    std::fprintf(fh, "%.17g,1\n", t);
  }
  std::fclose(fh);
  CHECK_THROWS_AS(io::read_grid_function(dir.file("skew.grid")), ParseError);

  fh = std::fopen(dir.file("bad2.grid").c_str(), "w");
  std::fputs("wrong,header\n0,1\n", fh);
  std::fclose(fh);
  CHECK_THROWS_AS(io::read_grid_function(dir.file("bad2.grid")), ParseError);

  fh = std::fopen(dir.file("junk.poly").c_str(), "w");
  std::fputs("1,2\nnot,a,number\n", fh);
  std::fclose(fh);
  CHECK_THROWS_AS(io::read_polygon(dir.file("junk.poly")), ParseError);
}

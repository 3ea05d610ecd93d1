#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bo/csv_io.hpp"
#include "bo/errors.hpp"

using bo::cplx;

TEST_CASE("parse_params accepts rows with or without a header") {
  const auto a = bo::io::parse_params("x,eta\n0,1\n2.5,0.5\n");
  REQUIRE(a.size() == 2);
  CHECK(a[0] == cplx(0.0, -1.0));
  CHECK(a[1] == cplx(2.5, -0.5));

  const auto b = bo::io::parse_params("# two solitons\n\n-1, 1\r\n+1,1e0\n");
  REQUIRE(b.size() == 2);
  CHECK(b[0] == cplx(-1.0, -1.0));
  CHECK(b[1] == cplx(1.0, -1.0));
}

TEST_CASE("parse_params rejects malformed input") {
  CHECK_THROWS_AS(bo::io::parse_params(""), bo::io::ParseError);
  CHECK_THROWS_AS(bo::io::parse_params("x,eta\n"), bo::io::ParseError);
  CHECK_THROWS_AS(bo::io::parse_params("0,1,2\n"), bo::io::ParseError);
  CHECK_THROWS_AS(bo::io::parse_params("0,abc\n"), bo::io::ParseError);
  CHECK_THROWS_AS(bo::io::parse_params("0,1\nx,eta\n"), bo::io::ParseError);
  CHECK_THROWS_AS(bo::io::parse_params("0,\n"), bo::io::ParseError);
  CHECK_THROWS_AS(bo::io::parse_params("0,-1\n"), bo::Error);
}

TEST_CASE("fmt writes 17 significant digits and no negative zero") {
  CHECK(bo::io::fmt(0.1) == "0.10000000000000001");
  CHECK(bo::io::fmt(-0.0) == "0");
  CHECK(bo::io::fmt(2.0) == "2");
  CHECK(std::stod(bo::io::fmt(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV writers") {
  const bo::GridField f(-1.0, 0.5, {1.0, 2.0, 3.0});
  CHECK(bo::io::field_csv(f) == "x,u\n-1,1\n-0.5,2\n0,3\n");
  CHECK(bo::io::frame_name(5.0) == "frame_t5.0000.csv");
  CHECK(bo::io::frame_name(-0.25) == "frame_t-0.2500.csv");
  const std::vector<bo::io::ActionRow> rows{{0.0, bo::ActionAngles{{-2.0, -1.0}, {0.5, 0.0}}}};
  CHECK(bo::io::actions_csv(rows) == "t,j,r,alpha\n0,1,-2,0.5\n0,2,-1,0\n");
}

TEST_CASE("write_atomic replaces the target and leaves no temporary") {
  const auto dir = std::filesystem::temp_directory_path() / "bo_csv_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  bo::io::write_atomic(path, "first\n");
  bo::io::write_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second\n");
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 1);
  std::filesystem::remove_all(dir);
}

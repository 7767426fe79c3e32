#include "rbf/fields.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "rbf/io.hpp"

using rbf::Domain2;
using rbf::Field;
using rbf::Index;
using rbf::PointSet;
using rbf::ScatteredData;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/rbf_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sinc2d fixtures") {
  CHECK(rbf::sinc2d(0.0, 0.0) == 1.0);
  CHECK(std::abs(rbf::sinc2d(1000.0, 250.0)) < 1e-16);  // sin(pi) at double precision
  // (2/pi)^2, frozen from an independent evaluation
  CHECK(rel_err(rbf::sinc2d(500.0, 250.0), 0.40528473456935116) < 1e-15);
}

TEST_CASE("sinc2d is even in each scaled argument") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const double x = 2000.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1000.0;
    const double y = 1000.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 500.0;
    const double v = rbf::sinc2d(x, y);
    CHECK(rel_err(rbf::sinc2d(-x, y), v) < 1e-14);
    CHECK(rel_err(rbf::sinc2d(x, -y), v) < 1e-14);
  }
}

TEST_CASE("franke fixtures") {
  // frozen from an independent evaluation of the four-term formula
  CHECK(rel_err(rbf::franke(0.0, 0.0), 0.7664205912849231) < 1e-15);
  CHECK(rel_err(rbf::franke(1.0, 1.0), 0.03586959238610449) < 1e-15);
  CHECK(rel_err(rbf::franke(0.5, 0.5), 0.3257620892806842) < 1e-15);
  CHECK(rel_err(rbf::franke(0.25, 0.75), 0.2724132516081212) < 1e-15);
  CHECK(rel_err(rbf::franke(0.9, 0.1), 0.2371766507476324) < 1e-15);
  CHECK(rbf::franke(1.0, 1.0) > 0.0);
  CHECK(rbf::franke(1.0, 1.0) < 1.0);
}

TEST_CASE("franke values stay inside the established bracket") {
  // bracket from a dense-grid + multistart search, with margin
  for (Index iy = 0; iy < 201; ++iy) {
    for (Index ix = 0; ix < 201; ++ix) {
      const double v = rbf::franke(ix / 200.0, iy / 200.0);
      CHECK(v > 0.0011);
      CHECK(v < 1.2201);
    }
  }
}

TEST_CASE("field lookup") {
  const Field<double> sinc = rbf::make_field<double>("sinc2d");
  CHECK(sinc.domain.x_max == 1000.0);
  CHECK(sinc.domain.y_max == 500.0);
  const Field<double> fr = rbf::make_field<double>("franke");
  CHECK(fr.domain.x_max == 1.0);
  CHECK_THROWS_AS(rbf::make_field<double>("peaks"), std::invalid_argument);
}

TEST_CASE("sample_field") {
  const Field<double> field = rbf::sinc2d_field<double>();

  PointSet<double> empty;
  empty.points.resize(0, 2);
  CHECK(rbf::sample_field(field, empty).size() == 0);

  const Field<double> constant{"const7", Domain2<double>(0, 1, 0, 1),
                               [](double, double) { return 7.0; }};
  const PointSet<double> sites = rbf::halton_points<double>(20, 1, constant.domain);
  const ScatteredData<double> sampled = rbf::sample_field(constant, sites);
  REQUIRE(sampled.size() == 20);
  CHECK((sampled.values.array() == 7.0).all());
  CHECK(sampled.sites.points == sites.points);

  PointSet<double> outside;
  outside.points.resize(2, 2);
  outside.points << 0.5, 0.5, 1.5, 0.5;
  CHECK_THROWS_WITH_AS(rbf::sample_field(constant, outside),
                       doctest::Contains("site 1"), std::domain_error);
}

TEST_CASE("scattered data round-trips through csv") {
  TempFile file("scattered.csv");
  ScatteredData<double> data;
  data.sites.points.resize(3, 2);
  data.sites.points << 0.1, 0.2, 1.0 / 3.0, 2.0 / 7.0, -5.5e-13, 4e17;
  data.values.resize(3);
  data.values << 1.25, -2e-9, 0.7664205912849231;
  rbf::io::save_scattered(data, file.path);
  const ScatteredData<double> back = rbf::io::load_scattered(file.path);
  REQUIRE(back.size() == 3);
  CHECK(back.sites.points == data.sites.points);
  CHECK(back.values == data.values);
}

TEST_CASE("scattered csv edge cases") {
  TempFile file("scattered_edge.csv");

  {
    std::ofstream out(file.path);
    out << "x,y,h\n";
  }
  CHECK(rbf::io::load_scattered(file.path).size() == 0);

  {
    std::ofstream out(file.path);
    out << "x,y,h\r\n0.5,0.25,1\r\n";  // CRLF accepted
  }
  CHECK(rbf::io::load_scattered(file.path).size() == 1);

  {
    std::ofstream out(file.path);
    out << "x,y,h\n1.0,2.0,abc\n";
  }
  CHECK_THROWS_WITH_AS(rbf::io::load_scattered(file.path), doctest::Contains("row 2"),
                       rbf::ParseError);

  {
    std::ofstream out(file.path);
    out << "x,y\n1.0,2.0\n";
  }
  CHECK_THROWS_WITH_AS(rbf::io::load_scattered(file.path), doctest::Contains("x,y,h"),
                       rbf::ParseError);

  {
    std::ofstream out(file.path);
    out << "x,y,h\n1.0,2.0,3.0\n4.0,5.0\n";
  }
  CHECK_THROWS_WITH_AS(rbf::io::load_scattered(file.path), doctest::Contains("row 3"),
                       rbf::ParseError);
}

TEST_CASE("point csv export") {
  TempFile file("points.csv");
  const PointSet<double> pts = rbf::halton_points<double>(5, 1, Domain2<double>(0, 1, 0, 1));
  rbf::io::save_points(pts, file.path);
  std::ifstream in(file.path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y");
  const PointSet<double> back = rbf::io::load_points(file.path);
  CHECK(back.points == pts.points);
}

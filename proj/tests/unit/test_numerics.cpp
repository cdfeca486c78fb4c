#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "json_io.hpp"
#include "redweyl/parallel.hpp"
#include "redweyl/quadrature.hpp"
#include "redweyl/random.hpp"
#include "redweyl/spherical.hpp"

using namespace redweyl;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 16, 64}) {
    const Rule r = gauss_legendre(n, -0.5, 2.0);
    for (int deg = 0; deg < 2 * n && deg < 40; ++deg) {
      double q = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = (std::pow(2.0, deg + 1) - std::pow(-0.5, deg + 1)) / (deg + 1);
      EXPECT_NEAR(q, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(GaussLegendre, NodesInsideAndAscending) {
  const Rule r = gauss_legendre(128, 0.0, 1.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.nodes[i], 0.0);
    EXPECT_LT(r.nodes[i], 1.0);
    EXPECT_GT(r.weights[i], 0.0);
    if (i > 0) EXPECT_GT(r.nodes[i], r.nodes[i - 1]);
  }
}

TEST(PeriodicTrapezoid, ExactForTrigonometricPolynomials) {
  const int n = 9;
  const Rule r = periodic_trapezoid(n, 0.0, 2.0 * std::numbers::pi, 0.3);
  for (int k = 0; k < n; ++k) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      c += r.weights[i] * std::cos(k * r.nodes[i]);
      s += r.weights[i] * std::sin(k * r.nodes[i]);
    }
    EXPECT_NEAR(c, k == 0 ? 2.0 * std::numbers::pi : 0.0, 1e-13);
    EXPECT_NEAR(s, 0.0, 1e-13);
  }
}

TEST(Sphere, AreaAndBallVolumeMatchClosedForms) {
  EXPECT_NEAR(sphere_area(2), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4.0 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(unit_ball_volume(2), std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-13);
  EXPECT_NEAR(unit_ball_volume(4), std::numbers::pi * std::numbers::pi / 2.0, 1e-13);
}

TEST(Stream, CounterBasedAndReproducible) {
  Stream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.bits();
    EXPECT_EQ(x, b.bits());
    EXPECT_NE(x, c.bits());
    EXPECT_NE(x, d.bits());
  }
}

TEST(Stream, UniformMomentsAreReasonable) {
  Stream s(1, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0, nsum = 0.0, nsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum_sq += u * u;
    const double z = s.normal();
    nsum += z;
    nsq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sum_sq / n, 1.0 / 3.0, 0.005);
  EXPECT_NEAR(nsum / n, 0.0, 0.01);
  EXPECT_NEAR(nsq / n, 1.0, 0.01);
}

TEST(ForEachBlock, VisitsEveryBlockOnce) {
  std::vector<int> hits(1000, 0);
  for_each_block(hits.size(), [&](std::size_t b) { hits[b] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ForEachBlock, PropagatesExceptions) {
  EXPECT_THROW(for_each_block(10, [](std::size_t b) {
                 if (b == 3) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(JsonWriter, SortedKeysAndSeventeenDigits) {
  io::json j = {{"zeta", 0.1}, {"alpha", 1}, {"mid", {{"b", true}, {"a", "x\"y"}}}};
  const std::string s = io::dump(j, -1);
  EXPECT_EQ(s, R"({"alpha":1,"mid":{"a":"x\"y","b":true},"zeta":0.10000000000000001})");
}

TEST(JsonWriter, NonFiniteBecomesNull) {
  io::json j = {{"x", std::nan("")}};
  EXPECT_EQ(io::dump(j, -1), R"({"x":null})");
}

TEST(Csv, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(io::csv({"a", "b"}, {{"1", "2"}}), "a,b\r\n1,2\r\n");
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(io::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(io::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(io::hex64(0xaf63dc4c8601ec8cULL), "af63dc4c8601ec8c");
}

#include <doctest.h>

#include <lobound/box.hpp>
#include <lobound/polynomial.hpp>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace lobound;

TEST_CASE("uniform box table is flat") {
  const auto t = to_table(uniform_box());
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(t(x, y, a, b) == doctest::Approx(0.25));
}

TEST_CASE("PR box table") {
  const auto t = to_table(pr_box());
  // contexts 00, 01, 10: perfectly correlated
  for (int ctx : {0, 1, 2}) {
    int x = ctx / 2, y = ctx % 2;
    CHECK(t(x, y, 0, 0) == doctest::Approx(0.5));
    CHECK(t(x, y, 1, 1) == doctest::Approx(0.5));
    CHECK(t(x, y, 0, 1) == doctest::Approx(0.0));
  }
  // context 11: anticorrelated
  CHECK(t(1, 1, 0, 1) == doctest::Approx(0.5));
  CHECK(t(1, 1, 1, 0) == doctest::Approx(0.5));
  CHECK(t(1, 1, 0, 0) == doctest::Approx(0.0));
}

TEST_CASE("invalid box is reported with the offending entry") {
  NSBox bad;
  bad.m0 = 1;
  bad.n0 = 1;
  bad.c1 = 0;  // forces P(01|00) and P(10|00) negative-ish: 1+c1-m0-n0 = -1
  CHECK(!is_valid(bad));
  CHECK_THROWS_AS(to_table(bad), TableEntryError);
  // unchecked conversion still works for optimizer iterates
  const auto t = to_table_unchecked(bad);
  CHECK(t(0, 0, 1, 1) == doctest::Approx(-1.0));
}

TEST_CASE("table entries follow the fixed parameterization") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    NSBox box = oracles::random_valid_box(rng);
    const auto t = to_table(box);
    const double m[2] = {box.m0, box.m1};
    const double n[2] = {box.n0, box.n1};
    const double c[4] = {box.c1, box.c2, box.c3, box.c4};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double cj = c[2 * x + y];
        CHECK(t(x, y, 0, 0) == doctest::Approx(cj).epsilon(1e-14));
        CHECK(t(x, y, 0, 1) == doctest::Approx(m[x] - cj).epsilon(1e-14));
        CHECK(t(x, y, 1, 0) == doctest::Approx(n[y] - cj).epsilon(1e-14));
        CHECK(t(x, y, 1, 1) ==
              doctest::Approx(1 + cj - m[x] - n[y]).epsilon(1e-14));
      }
  }
}

TEST_CASE("rows normalize and marginals are setting-independent") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10000; ++i) {
    NSBox box = oracles::random_valid_box(rng);
    const auto t = to_table(box);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        double row = t(x, y, 0, 0) + t(x, y, 0, 1) + t(x, y, 1, 0) + t(x, y, 1, 1);
        CHECK(std::abs(row - 1.0) < 1e-12);
      }
    // Alice marginal must not depend on y, Bob's not on x.
    for (int x = 0; x < 2; ++x)
      CHECK(std::abs((t(x, 0, 0, 0) + t(x, 0, 0, 1)) -
                     (t(x, 1, 0, 0) + t(x, 1, 0, 1))) < 1e-12);
    for (int y = 0; y < 2; ++y)
      CHECK(std::abs((t(0, y, 0, 0) + t(0, y, 1, 0)) -
                     (t(1, y, 0, 0) + t(1, y, 1, 0))) < 1e-12);
  }
}

TEST_CASE("correlators") {
  CHECK(correlator(uniform_box(), 0, 0) == doctest::Approx(0.0));
  CHECK(correlator(uniform_box(), 1, 1) == doctest::Approx(0.0));
  CHECK(correlator(pr_box(), 0, 0) == doctest::Approx(1.0));
  CHECK(correlator(pr_box(), 1, 1) == doctest::Approx(-1.0));

  // product boxes factorize
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    NSBox box;
    box.m0 = u(rng);
    box.m1 = u(rng);
    box.n0 = u(rng);
    box.n1 = u(rng);
    const double m[2] = {box.m0, box.m1};
    const double n[2] = {box.n0, box.n1};
    box.c1 = m[0] * n[0];
    box.c2 = m[0] * n[1];
    box.c3 = m[1] * n[0];
    box.c4 = m[1] * n[1];
    REQUIRE(is_valid(box, 1e-9));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        CHECK(std::abs(correlator(box, x, y) - mean_a(box, x) * mean_b(box, y)) <
              1e-12);
        CHECK(correlator(box, x, y) >= -1.0 - 1e-12);
        CHECK(correlator(box, x, y) <= 1.0 + 1e-12);
      }
  }
}

TEST_CASE("chsh values") {
  CHECK(chsh(pr_box()) == doctest::Approx(4.0));
  CHECK(chsh(uniform_box()) == doctest::Approx(0.0));
  CHECK(chsh(uniform_box(), 0, 1) == doctest::Approx(0.0));
  // all-zeros deterministic box: every correlator is +1
  CHECK(chsh(deterministic_box({0, 0}, {0, 0})) == doctest::Approx(2.0));
}

TEST_CASE("chsh polynomial matches numeric chsh") {
  std::mt19937_64 rng(24);
  for (int mx = 0; mx < 2; ++mx)
    for (int my = 0; my < 2; ++my) {
      Polynomial p = chsh_polynomial(mx, my);
      for (int i = 0; i < 100; ++i) {
        NSBox box = oracles::random_valid_box(rng);
        CHECK(p.evaluate(box.values()) ==
              doctest::Approx(chsh(box, mx, my)).epsilon(1e-12));
      }
    }
}

TEST_CASE("hardy parameters") {
  const auto hp = hardy_parameters(uniform_box());
  CHECK(hp.q1 == doctest::Approx(0.25));
  CHECK(hp.q4 == doctest::Approx(0.25));
  CHECK(hp.zeros[0] == doctest::Approx(0.25));
  CHECK(hp.zeros[1] == doctest::Approx(0.25));

  // gauge with binding constraints satisfied
  NSBox box = uniform_box();
  box.c2 = box.m0;
  box.c1 = box.n0;
  box.c4 = 0;
  const auto hz = hardy_parameters(box);
  CHECK(hz.q1 == doctest::Approx(0.0));
  CHECK(hz.zeros[0] == doctest::Approx(0.0));
  CHECK(hz.zeros[1] == doctest::Approx(0.0));
  CHECK(hz.q4 == doctest::Approx(box.c3));
}

TEST_CASE("local boxes never beat the classical Hardy logic") {
  // if the zero conditions hold, q4 <= q1 for every local box
  std::mt19937_64 rng(25);
  for (int i = 0; i < 2000; ++i) {
    NSBox box = oracles::random_local_box(rng);
    const auto hp = hardy_parameters(box);
    CHECK(hp.q4 <= hp.q1 + hp.zeros[0] + hp.zeros[1] + 1e-9);
    CHECK(std::abs(chsh(box)) <= 2 + 1e-9);
  }
}

TEST_CASE("deterministic boxes enumerate all strategy pairs") {
  const auto& dets = deterministic_boxes();
  REQUIRE(dets.size() == 16);
  for (const auto& d : dets) {
    CHECK(is_valid(d));
    const auto t = to_table(d);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        int ones = 0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            if (t(x, y, a, b) > 0.5) ++ones;
        CHECK(ones == 1);  // deterministic: exactly one outcome per context
      }
  }
  // index convention: 4*alice + bob, strategy = 2*f(0)+f(1)
  CHECK(deterministic_box({0, 0}, {0, 0}).values() == dets[0].values());
  CHECK(deterministic_box({1, 1}, {1, 1}).values() == dets[15].values());
}

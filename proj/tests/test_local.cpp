#include <doctest.h>

#include <lobound/box.hpp>
#include <lobound/local.hpp>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace lobound;

namespace {

double box_distance(const NSBox& a, const NSBox& b) {
  double d = 0;
  const auto va = a.values(), vb = b.values();
  for (std::size_t i = 0; i < kNumVars; ++i) d = std::max(d, std::abs(va[i] - vb[i]));
  return d;
}

}  // namespace

TEST_CASE("deterministic boxes are local with unit weight") {
  const auto& dets = deterministic_boxes();
  for (int i = 0; i < 16; ++i) {
    const auto cert = is_local(dets[i]);
    REQUIRE(cert.is_local);
    REQUIRE(cert.weights.has_value());
    double sum = 0;
    for (double w : *cert.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((*cert.weights)[i] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(box_distance(cert.reconstruction(), dets[i]) < 1e-9);
  }
}

TEST_CASE("PR box is nonlocal with a separating functional") {
  const auto cert = is_local(pr_box());
  REQUIRE(!cert.is_local);
  REQUIRE(cert.violated_functional.has_value());
  const auto& f = *cert.violated_functional;
  CHECK(f.value_at_box > f.local_bound + 1e-6);
  CHECK(f.value(pr_box()) == doctest::Approx(f.value_at_box).epsilon(1e-9));
  // the functional must actually separate: every deterministic box stays
  // at or below the bound
  for (const auto& d : deterministic_boxes())
    CHECK(f.value(d) <= f.local_bound + 1e-9);
}

TEST_CASE("sampled local mixtures are recognized and reconstructed") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    NSBox box = oracles::random_local_box(rng);
    const auto cert = is_local(box);
    REQUIRE(cert.is_local);
    REQUIRE(cert.weights.has_value());
    double sum = 0;
    for (double w : *cert.weights) {
      CHECK(w >= -1e-12);
      sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(box_distance(cert.reconstruction(), box) < 1e-9);
  }
}

TEST_CASE("is_local agrees with the CHSH oracle on valid boxes") {
  // Fine's theorem: for two-setting two-outcome no-signaling boxes,
  // membership in the local polytope is exactly |CHSH| <= 2 in all
  // eight sign patterns.
  std::mt19937_64 rng(32);
  int nonlocal_seen = 0;
  for (int i = 0; i < 2000; ++i) {
    NSBox box = oracles::random_valid_box(rng);
    const bool lp = is_local(box).is_local;
    const bool fine = oracles::fine_local(box);
    // avoid flapping on boxes within tolerance of the boundary
    double margin = 0;
    for (int mx = 0; mx < 2; ++mx)
      for (int my = 0; my < 2; ++my)
        margin = std::max(margin, std::abs(chsh(box, mx, my)));
    if (std::abs(margin - 2.0) < 1e-7) continue;
    CHECK(lp == fine);
    if (!fine) ++nonlocal_seen;
  }
  CHECK(nonlocal_seen > 0);  // the sample must actually exercise both sides
}

TEST_CASE("noisy PR boxes cross the boundary at weight 1/2") {
  // (1-w) uniform + w PR is local iff CHSH = 4w <= 2
  for (double w : {0.0, 0.2, 0.49, 0.51, 0.8, 1.0}) {
    NSBox box;
    const auto pr = pr_box().values();
    const auto un = uniform_box().values();
    std::array<double, kNumVars> mix{};
    for (std::size_t k = 0; k < kNumVars; ++k)
      mix[k] = w * pr[k] + (1 - w) * un[k];
    box.m0 = mix[0];
    box.m1 = mix[1];
    box.n0 = mix[2];
    box.n1 = mix[3];
    box.c1 = mix[4];
    box.c2 = mix[5];
    box.c3 = mix[6];
    box.c4 = mix[7];
    CHECK(is_local(box).is_local == (w <= 0.5));
  }
}

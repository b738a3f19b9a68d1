#include <cmath>

#include "d2d/mac_region.hpp"
#include "d2d/random.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace d2d;

TEST_SUITE("mac_region") {

TEST_CASE("classify_mi_at_ui examples") {
  CHECK(classify_mi_at_ui({Snr(3), Snr(0), 1.0, 5.0}) == DecodePath::DirectDecode);
  CHECK(classify_mi_at_ui({Snr(3), Snr(3), 1.0, 0.8}) == DecodePath::OicDecode);
  for (double gi : {0.0, 0.5, 10.0, 1e4}) {
    for (double ri : {0.0, 1.0, 7.0}) {
      CHECK(classify_mi_at_ui({Snr(1), Snr(gi), 1.5, ri}) == DecodePath::Undecodable);
    }
  }
  // Interferer rate just above C(3/4) blocks cancellation.
  CHECK(classify_mi_at_ui({Snr(3), Snr(3), 1.0, 0.81}) == DecodePath::Undecodable);
}

TEST_CASE("classify_uj_at_b examples") {
  // Machine relay decodable against Uj: Uj gets the clean channel.
  CHECK(classify_uj_at_b({Snr(3), Snr(20), 2.0, 0.5}) == DecodePath::OicDecode);
  CHECK(uj_rate_ceiling_at_b(Snr(3), Snr(20), 0.5) == doctest::Approx(2.0));
  // R_M above C(ui/(1+uj)): Uj limited to the SINR rate.
  CHECK(uj_rate_ceiling_at_b(Snr(3), Snr(1), 0.5) == doctest::Approx(std::log2(1.0 + 1.5)));
  CHECK(classify_uj_at_b({Snr(3), Snr(1), 2.0, 0.5}) == DecodePath::Undecodable);
  CHECK(classify_uj_at_b({Snr(3), Snr(1), 1.3, 0.5}) == DecodePath::DirectDecode);
  // No interferer.
  for (double rm : {0.1, 1.0, 10.0}) {
    CHECK(uj_rate_ceiling_at_b(Snr(3), Snr(0), rm) == doctest::Approx(2.0));
    CHECK(classify_uj_at_b({Snr(3), Snr(0), 2.0, rm}) != DecodePath::Undecodable);
  }
}

TEST_CASE("max_rate_b_at_ui cases") {
  CHECK(max_rate_b_at_ui(Snr(3), Snr(0.2), 0.5) == RateCeiling::at_most(0.0));
  CHECK_FALSE(max_rate_b_at_ui(Snr(3), Snr(1e4), 0.1).bounded());
  const RateCeiling mid = max_rate_b_at_ui(Snr(3), Snr(1), 0.9);
  REQUIRE(mid.bounded());
  CHECK(mid.value() == doctest::Approx(1.321928).epsilon(1e-6));
  CHECK(std::log2(1.25) <= 0.9);
  CHECK(mid.clamp(5.0) == mid.value());
  CHECK(RateCeiling::unbounded().clamp(5.0) == 5.0);
}

TEST_CASE("max_rate_b_at_ui boundary continuity") {
  RandomStream rng(derive_seed(3, StreamTag::Test));
  for (int k = 0; k < 1000; ++k) {
    const double b = rng.uniform(0.01, 100.0), m = rng.uniform(0.01, 100.0);
    const double rm = std::log2(1.0 + m / (1.0 + b));
    const RateCeiling c = max_rate_b_at_ui(Snr(b), Snr(m), rm);
    // At the boundary the machine is directly decodable, so any finite bound
    // that is reported must itself be attainable.
    if (c.bounded()) {
      CHECK(classify_mi_at_ui({Snr(m), Snr(b), rm, c.value()}) != DecodePath::Undecodable);
    }
    const RateCeiling just_inside = max_rate_b_at_ui(Snr(b), Snr(m), rm + 1e-9);
    REQUIRE(just_inside.bounded());
    CHECK(classify_mi_at_ui({Snr(m), Snr(b), rm + 1e-9, just_inside.value()}) !=
          DecodePath::Undecodable);
  }
}

TEST_CASE("classifiers agree with the inline region inequalities") {
  RandomStream rng(derive_seed(4, StreamTag::Test));
  for (int k = 0; k < 10'000; ++k) {
    const double s = std::exp(rng.uniform(-5.0, 9.0));
    const double i = rng.uniform() < 0.1 ? 0.0 : std::exp(rng.uniform(-5.0, 9.0));
    const double rs = rng.uniform(0.0, 8.0), ri = rng.uniform(0.0, 8.0);
    const bool ok = oracle::mac_decodable(s, i, rs, ri);
    CHECK((classify_mi_at_ui({Snr(s), Snr(i), rs, ri}) != DecodePath::Undecodable) == ok);
    CHECK((classify_uj_at_b({Snr(s), Snr(i), rs, ri}) != DecodePath::Undecodable) == ok);
    // Lowering the desired rate never loses decodability.
    if (ok) {
      CHECK(classify_mi_at_ui({Snr(s), Snr(i), rs * rng.uniform(), ri}) != DecodePath::Undecodable);
    }
    // Cancellation never hurts: the clean ceiling is at least the direct one.
    CHECK(std::log2(1.0 + s) >= std::log2(1.0 + s / (1.0 + i)));
    // Uplink ceiling is the largest decodable rate.
    const double cap = uj_rate_ceiling_at_b(Snr(s), Snr(i), ri);
    CHECK(oracle::mac_decodable(s, i, cap, ri));
    CHECK_FALSE(oracle::mac_decodable(s, i, cap + 1e-6, ri));
  }
}

TEST_CASE("decode path names") {
  CHECK(to_string(DecodePath::DirectDecode) != to_string(DecodePath::OicDecode));
  CHECK(to_string(DecodePath::Undecodable) != to_string(DecodePath::OicDecode));
}

}

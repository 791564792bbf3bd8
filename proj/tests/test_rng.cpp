#include <cmath>

#include "doctest.h"
#include "lab/rng.hpp"

using lab::RngStream;

TEST_CASE("equal seed and stream id reproduce the sequence") {
  RngStream a(12345, 0);
  RngStream b(12345, 0);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids diverge immediately") {
  RngStream a(12345, 0);
  RngStream b(12345, 1);
  CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("uniform lands in [0,1) and covers both halves") {
  RngStream rng(7, 0);
  int low = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    if (u < 0.5) ++low;
  }
  CHECK(low > 4500);
  CHECK(low < 5500);
}

TEST_CASE("normal sample mean obeys the CLT bound at 1e6 samples") {
  RngStream rng(42, 0);
  const int samples = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double g = rng.normal();
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / samples;
  CHECK(std::abs(mean) < 4e-3);  // 4 / sqrt(N)
  CHECK(sum_sq / samples == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("complex normal has unit second moment") {
  RngStream rng(42, 3);
  double sum = 0.0;
  const int samples = 200000;
  for (int i = 0; i < samples; ++i) sum += std::norm(rng.normal_complex());
  CHECK(sum / samples == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("substream is deterministic and distinct from the parent") {
  RngStream parent(99, 5);
  RngStream c1 = parent.substream(17);
  RngStream c2 = parent.substream(17);
  RngStream c3 = parent.substream(18);
  CHECK(c1.next_u64() == c2.next_u64());
  CHECK(c1.next_u64() != c3.next_u64());
}

TEST_CASE("uniform_below rejects zero and respects the bound") {
  RngStream rng(1, 1);
  CHECK_THROWS(rng.uniform_below(0));
  for (int i = 0; i < 1000; ++i) CHECK(rng.uniform_below(7) < 7);
}

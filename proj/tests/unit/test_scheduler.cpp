#include <cmath>
#include <vector>

#include "d2d/random.hpp"
#include "d2d/scheduler.hpp"
#include "doctest.h"

using namespace d2d;

namespace {

std::vector<PairCandidate> line(const std::vector<double>& rates) {
  std::vector<PairCandidate> out;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    out.push_back({0, static_cast<int>(k) + 1, rates[k]});
  }
  return out;
}

}  // namespace

TEST_SUITE("scheduler") {

TEST_CASE("maxr picks the largest rate with a lexicographic tie rule") {
  CHECK(select_maxr(line({0.5, 2.0, 1.0, 1.0})) == 1);
  CHECK(select_maxr(line({1.0, 1.0, 1.0})) == 0);
  std::vector<PairCandidate> shuffled{{1, 0, 1.0}, {0, 2, 1.0}, {0, 1, 1.0}};
  CHECK(select_maxr(shuffled) == 2);
  CHECK_THROWS(select_maxr(std::vector<PairCandidate>{}));
  CHECK_THROWS(select_pf(std::vector<PairCandidate>{}, FairnessState(2)));
}

TEST_CASE("maxr argmax is scale invariant") {
  RandomStream rng(derive_seed(301, StreamTag::Test));
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> r(6);
    for (double& x : r) x = rng.uniform(0.0, 8.0);
    const double a = rng.uniform(0.01, 100.0);
    std::vector<double> s = r;
    for (double& x : s) x *= a;
    CHECK(select_maxr(line(r)) == select_maxr(line(s)));
  }
}

TEST_CASE("pf prefers the user with less history") {
  FairnessState f(2, 100.0);
  f.update(1, 0.2);  // r*[1] > r*[0]
  std::vector<PairCandidate> c{{1, 0, 1.0}, {0, 1, 1.0}};
  CHECK(select_pf(c, f) == 0);
}

TEST_CASE("pf with equal history equals maxr and is invariant to scaling history") {
  RandomStream rng(derive_seed(302, StreamTag::Test));
  for (int k = 0; k < 500; ++k) {
    std::vector<double> r(4);
    for (double& x : r) x = rng.uniform(0.0, 8.0);
    FairnessState f(5);
    CHECK(select_pf(line(r), f) == select_maxr(line(r)));
    for (int s = 0; s < 20; ++s) f.update(1 + rng.next_u64() % 4, rng.uniform(0.0, 5.0));
    const std::size_t before = select_pf(line(r), f);
    f.scale(rng.uniform(0.1, 10.0));
    CHECK(select_pf(line(r), f) == before);
  }
}

TEST_CASE("pf alternates service under equal instantaneous rates") {
  FairnessState f(2, 10.0);
  std::vector<PairCandidate> c{{1, 0, 1.0}, {0, 1, 1.0}};
  int served[2] = {0, 0};
  int switches = 0;
  std::size_t last = 2;
  for (int slot = 0; slot < 100; ++slot) {
    const std::size_t pick = select_pf(c, f);
    const auto j = static_cast<std::size_t>(c[pick].j);
    ++served[j];
    if (last != 2 && j != last) ++switches;
    last = j;
    f.update(j, c[pick].metric_rate);
  }
  CHECK(served[0] >= 45);
  CHECK(served[1] >= 45);
  CHECK(switches > 20);
}

TEST_CASE("fairness update law") {
  FairnessState a(3, 1.0);
  a.update(1, 2.5);
  CHECK(a.r_star(1) == 2.5);
  CHECK(a.r_star(0) == a.floor());

  FairnessState b(2, 10.0);
  for (int k = 0; k < 50; ++k) b.update(0, 1.0);
  CHECK(b.r_star(1) == b.floor());

  // Constant rate r from the floor: r* = r + (floor - r)(1 - 1/t_c)^n.
  const double r = 1.7, tc = 20.0;
  FairnessState c(1, tc);
  for (int n = 1; n <= 200; ++n) {
    c.update(0, r);
    const double expected = r + (c.floor() - r) * std::pow(1.0 - 1.0 / tc, n);
    CHECK(c.r_star(0) == doctest::Approx(expected).epsilon(1e-12));
  }

  const FairnessState d = update_fairness(FairnessState(2, 4.0), 0, 4.0);
  CHECK(d.r_star(0) == doctest::Approx(0.75 * 1e-3 + 1.0));
  CHECK_THROWS(FairnessState(2, 0.5));
  CHECK_THROWS(a.update(7, 1.0));
}

TEST_CASE("maxr served rate dominates pf on a fixed candidate stream") {
  RandomStream rng(derive_seed(303, StreamTag::Test));
  FairnessState f(4);
  double maxr = 0.0, pf = 0.0;
  for (int slot = 0; slot < 5000; ++slot) {
    std::vector<PairCandidate> c;
    for (int j = 0; j < 4; ++j) c.push_back({(j + 1) % 4, j, rng.uniform(0.0, 1.0 + j)});
    maxr += c[select_maxr(c)].metric_rate;
    const std::size_t p = select_pf(c, f);
    pf += c[p].metric_rate;
    f.update(static_cast<std::size_t>(c[p].j), c[p].metric_rate);
  }
  CHECK(maxr >= pf);
}

}

#include <cmath>
#include <random>

#include "doctest.h"
#include "polygas/config.hpp"
#include "polygas/zeta.hpp"

using namespace polygas;

namespace {

ModelParams base_params(double alpha) {
  ModelParams p;
  p.alpha = alpha;
  p.lambda = ModelParams::interval(0, 4);
  return p;
}

// independent evaluation: truncated double sum with a certified tail bound
double hamiltonian_truncated(const SiteSet& minus, double alpha, long long radius,
                             double* tail_bound) {
  // alpha is 1.5 or 2 here; avoid std::pow in the hot loop
  auto coupling = [alpha](double d) {
    return alpha == 2.0 ? 1.0 / (d * d) : 1.0 / (d * std::sqrt(d));
  };
  double h = 0.0, comp = 0.0;
  long long lo = minus.sites.front() - radius;
  long long hi = minus.sites.back() + radius;
  for (int x : minus.sites)
    for (long long y = lo; y <= hi; ++y) {
      if (minus.contains(static_cast<int>(y))) continue;
      double term = 2.0 * coupling(static_cast<double>(std::abs(y - x))) - comp;
      double next = h + term;
      comp = (next - h) - term;
      h = next;
    }
  // per site the two tails contribute 2 * 2 sum_{d > R} d^-alpha, bounded by
  // 4 [R^-alpha + R^(1-alpha)/(alpha-1)]
  *tail_bound = minus.size() * 4.0 *
                (std::pow(static_cast<double>(radius), -alpha) +
                 std::pow(static_cast<double>(radius), 1.0 - alpha) / (alpha - 1.0));
  return h;
}

}  // namespace

TEST_CASE("boundary of explicit spin maps") {
  std::map<int, int> all_plus;
  for (int x = 0; x <= 4; ++x) all_plus[x] = 1;
  CHECK(boundary(all_plus).bonds.empty());

  std::map<int, int> one_minus = all_plus;
  one_minus[0] = -1;
  CHECK(boundary(one_minus).to_half_integers() == std::vector<double>{-0.5, 0.5});

  std::map<int, int> three = all_plus;
  three[0] = three[1] = three[3] = -1;
  CHECK(boundary(three).to_half_integers() == std::vector<double>{-0.5, 1.5, 2.5, 3.5});
}

TEST_CASE("minus interior inverts boundary") {
  CHECK(minus_interior(SpinFlipConfig{}).sites.empty());
  CHECK(minus_interior(SpinFlipConfig::from_half_integers({-0.5, 0.5})).sites ==
        std::vector<int>{0});
  CHECK(minus_interior(SpinFlipConfig::from_half_integers({-0.5, 1.5, 2.5, 3.5})).sites ==
        std::vector<int>{0, 1, 3});
}

TEST_CASE("boundary and minus interior are mutually inverse on a 12-site window") {
  for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
    SiteSet s;
    for (int b = 0; b < 12; ++b)
      if (mask & (1u << b)) s.sites.push_back(b);
    SpinFlipConfig cfg = boundary(s);
    CHECK(cfg.flip_count() % 2 == 0);
    CHECK(minus_interior(cfg).sites == s.sites);
  }
}

TEST_CASE("hamiltonian closed forms") {
  ModelParams p = base_params(2.0);
  const double pi = std::acos(-1.0);

  CHECK(hamiltonian(SpinFlipConfig{}, p) == 0.0);

  SiteSet single{{0}};
  CHECK(hamiltonian(single, p) == doctest::Approx(2.0 * pi * pi / 3.0).epsilon(1e-13));

  SiteSet pair{{0, 1}};
  CHECK(hamiltonian(pair, p) ==
        doctest::Approx(8.0 * riemann_zeta(2.0) - 4.0).epsilon(1e-13));
}

TEST_CASE("hamiltonian matches the truncated double sum within its tail bound") {
  std::mt19937_64 rng(20240811);
  for (double alpha : {1.5, 2.0}) {
    ModelParams p = base_params(alpha);
    const long long radius = alpha == 2.0 ? 1'000'000 : 250'000;
    for (int trial = 0; trial < 50; ++trial) {
      SiteSet s;
      for (int x = 0; x < 12; ++x)
        if (rng() % 3 == 0) s.sites.push_back(x);
      if (s.empty()) s.sites.push_back(static_cast<int>(rng() % 12));
      double tail = 0.0;
      double truncated = hamiltonian_truncated(s, alpha, radius, &tail);
      CHECK(std::abs(hamiltonian(s, p) - truncated) <= tail + 1e-10);
    }
  }
}

TEST_CASE("energy floor: H >= 2 for every nonempty configuration in a window") {
  for (double alpha : {1.5, 2.0}) {
    ModelParams p = base_params(alpha);
    for (std::uint32_t mask = 1; mask < (1u << 11); ++mask) {
      SiteSet s;
      for (int b = 0; b <= 10; ++b)
        if (mask & (1u << b)) s.sites.push_back(b);
      CHECK(hamiltonian(s, p) >= 2.0);
    }
  }
}

TEST_CASE("translation invariance of the energy") {
  ModelParams p = base_params(1.7);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SiteSet s;
    for (int x = 0; x < 10; ++x)
      if (rng() % 2) s.sites.push_back(x);
    if (s.empty()) s.sites.push_back(3);
    double h0 = hamiltonian(s, p);
    for (int shift : {-7, 3, 1000}) {
      SiteSet t;
      for (int x : s.sites) t.sites.push_back(x + shift);
      CHECK(std::abs(hamiltonian(t, p) - h0) <= 1e-12 * (1.0 + h0));
    }
  }
}

TEST_CASE("phi pair sums") {
  ModelParams p2 = base_params(2.0);
  CHECK(phi(SiteSet{{0}}, SiteSet{{1}}, p2) == doctest::Approx(4.0));
  CHECK(phi(SiteSet{{0}}, SiteSet{{2}}, p2) == doctest::Approx(1.0));

  ModelParams p15 = base_params(1.5);
  double expected = 4.0 * std::pow(3.0, -1.5) + 4.0 * std::pow(2.0, -1.5);
  CHECK(phi(SiteSet{{0, 1}}, SiteSet{{3}}, p15) == doctest::Approx(expected).epsilon(1e-13));

  CHECK(phi(SiteSet{{5}}, SiteSet{{2, 9}}, p15) ==
        doctest::Approx(phi(SiteSet{{2, 9}}, SiteSet{{5}}, p15)));
  CHECK_THROWS_AS(phi(SiteSet{{0, 1}}, SiteSet{{1, 2}}, p2), std::invalid_argument);
  CHECK_THROWS_AS(phi(SiteSet{}, SiteSet{{1}}, p2), std::invalid_argument);
}

TEST_CASE("field energy") {
  ModelParams p = base_params(2.0);
  SpinFlipConfig one = boundary(SiteSet{{0}});
  CHECK(field_energy(one, p) == 0.0);

  p.field = {{0, 0.3}, {1, -0.1}};
  SpinFlipConfig two = boundary(SiteSet{{0, 1}});
  CHECK(field_energy(two, p) == doctest::Approx(0.4));

  ModelParams q = base_params(2.0);
  q.lambda = ModelParams::interval(0, 5);
  q.field = {{0, 0.7}};
  SpinFlipConfig far_cfg = boundary(SiteSet{{5}});
  CHECK(field_energy(far_cfg, q) == 0.0);
}

TEST_CASE("riemann zeta closed forms and brute-force value") {
  const double pi = std::acos(-1.0);
  CHECK(riemann_zeta(2.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(riemann_zeta(4.0) ==
        doctest::Approx(pi * pi * pi * pi / 90.0).epsilon(1e-14));
  CHECK_THROWS_AS(riemann_zeta(1.0), std::invalid_argument);

  // independent oracle: direct sum to 1e8 terms plus integral tail with
  // midpoint correction; remaining error is O(s/12 N^-s-1) ~ 1e-28
  const double s = 1.5;
  const long long big_n = 100'000'000;
  double sum = 0.0, comp = 0.0;  // compensated summation
  for (long long n = big_n; n >= 1; --n) {
    double dn = static_cast<double>(n);
    double term = 1.0 / (dn * std::sqrt(dn)) - comp;
    double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  double tail = 2.0 / std::sqrt(static_cast<double>(big_n + 1)) +
                0.5 * std::pow(static_cast<double>(big_n + 1), -s);
  CHECK(std::abs(riemann_zeta(1.5) - (sum + tail)) <= 5e-13);
  CHECK(riemann_zeta(1.5) == doctest::Approx(2.6123753487).epsilon(1e-10));
}

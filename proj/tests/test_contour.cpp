#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "polygas/contour.hpp"
#include "polygas/polymer.hpp"

using namespace polygas;

namespace {

ModelParams params_m2(double alpha = 2.0) {
  ModelParams p;
  p.alpha = alpha;
  p.m_param = 2.0;
  p.lambda = ModelParams::interval(0, 11);
  return p;
}

SpinFlipConfig cfg_of(std::vector<double> halves) {
  return SpinFlipConfig::from_half_integers(halves);
}

// pair contour around a single site
Contour site_contour(int x, const ModelParams& p) {
  return make_contour(boundary(SiteSet{{x}}), p);
}

SpinFlipConfig random_even_config(std::mt19937_64& rng, int max_flips, int window) {
  std::set<int> bonds;
  int flips = 2 * (1 + static_cast<int>(rng() % (max_flips / 2)));
  while (static_cast<int>(bonds.size()) < flips)
    bonds.insert(2 * static_cast<int>(rng() % window) + 1);
  SpinFlipConfig cfg;
  cfg.bonds.assign(bonds.begin(), bonds.end());
  return cfg;
}

std::vector<std::vector<int>> partition_bodies(const ContourCollection& c) {
  std::vector<std::vector<int>> out;
  for (const auto& g : c.contours) out.push_back(g.body.bonds);
  return out;
}

}  // namespace

TEST_CASE("dual distance between flip sets") {
  CHECK(dist_dual(cfg_of({-0.5, 0.5}), cfg_of({2.5, 3.5})) == 2.0);
  auto a = cfg_of({-0.5, 0.5});
  CHECK(dist_dual(a, a) == 0.0);
  CHECK(dist_dual(cfg_of({-0.5, 0.5}), cfg_of({49.5, 50.5})) == 49.0);
  CHECK_THROWS_AS(dist_dual(a, SpinFlipConfig{}), std::invalid_argument);
}

TEST_CASE("compatibility threshold") {
  ModelParams p = params_m2();
  Contour g0 = site_contour(0, p);
  CHECK(is_compatible(g0, site_contour(4, p), p));   // dist 3 > 2
  CHECK(!is_compatible(g0, site_contour(3, p), p));  // dist 2, not > 2
  CHECK(!is_compatible(g0, g0, p));                  // never self-compatible
}

TEST_CASE("positive compatibility requires disjoint interiors") {
  ModelParams p = params_m2();
  // nested: small contour deep inside a long interval contour
  Contour outer = make_contour(cfg_of({-0.5, 6.5}), p);
  Contour inner = site_contour(3, p);
  CHECK(is_compatible(inner, outer, p));
  CHECK(!is_positively_compatible(inner, outer, p));

  CHECK(is_positively_compatible(site_contour(0, p), site_contour(6, p), p));
  CHECK(!is_positively_compatible(site_contour(0, p), site_contour(3, p), p));
}

TEST_CASE("m_partition on the basic examples") {
  ModelParams p = params_m2();
  auto single = m_partition(cfg_of({-0.5, 0.5}), p);
  CHECK(single.size() == 1);

  SpinFlipConfig two_far = merge_configs({boundary(SiteSet{{0}}), boundary(SiteSet{{100}})});
  CHECK(m_partition(two_far, p).size() == 2);

  auto merged = m_partition(cfg_of({-0.5, 0.5, 1.5, 2.5}), p);
  CHECK(merged.size() == 1);

  CHECK_THROWS_AS(m_partition(SpinFlipConfig{}, p), std::invalid_argument);
}

TEST_CASE("m_partition resolves nested structure") {
  // bonds {-1/2, 5/2, 7/2, 13/2}: the unique partition is a small contour at
  // site 3 nested inside the long pair {-1/2, 13/2}
  ModelParams p = params_m2();
  auto parts = m_partition(cfg_of({-0.5, 2.5, 3.5, 6.5}), p);
  REQUIRE(parts.size() == 2);
  CHECK(parts.contours[0].body == cfg_of({-0.5, 6.5}));
  CHECK(parts.contours[1].body == cfg_of({2.5, 3.5}));
  for (const auto& g : parts.contours) CHECK(is_irreducible(g.body, p));
  // the merged four-bond set is reducible
  CHECK(!is_irreducible(cfg_of({-0.5, 2.5, 3.5, 6.5}), p));
}

TEST_CASE("exhaustive irreducibility on the stated examples") {
  ModelParams p = params_m2();
  CHECK(is_irreducible(cfg_of({-0.5, 0.5}), p));
  SpinFlipConfig far_pair =
      merge_configs({boundary(SiteSet{{0}}), boundary(SiteSet{{50}})});
  CHECK(!is_irreducible(far_pair, p));
  // chain of three site contours, adjacent pairs close, ends far
  SpinFlipConfig chain =
      merge_configs({boundary(SiteSet{{0}}), boundary(SiteSet{{3}}), boundary(SiteSet{{6}})});
  CHECK(is_irreducible(chain, p));
  SpinFlipConfig big;
  for (int i = 0; i < 14; ++i) big.bonds.push_back(2 * i + 1);
  CHECK_THROWS_AS(is_irreducible(big, p), std::invalid_argument);
}

TEST_CASE("m_partition is independent of the split order") {
  ModelParams p = params_m2();
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 100; ++trial) {
    SpinFlipConfig cfg = random_even_config(rng, 10, 40);
    auto reference = partition_bodies(m_partition(cfg, p));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto shuffled = partition_bodies(m_partition_shuffled(cfg, p, seed));
      CHECK(shuffled == reference);
    }
  }
}

TEST_CASE("m_partition parts are irreducible and pairwise compatible") {
  ModelParams p = params_m2();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    SpinFlipConfig cfg = random_even_config(rng, 10, 36);
    auto parts = m_partition(cfg, p);
    for (const auto& g : parts.contours) CHECK(is_irreducible(g.body, p));
    for (int i = 0; i < parts.size(); ++i)
      for (int j = i + 1; j < parts.size(); ++j)
        CHECK(is_compatible(parts.contours[i], parts.contours[j], p));
  }
}

TEST_CASE("m_partition agrees with the definitional search on small configs") {
  // oracle: enumerate every partition into irreducible, pairwise compatible
  // even parts; exactly one must exist and match
  ModelParams p = params_m2();
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    SpinFlipConfig cfg = random_even_config(rng, 6, 30);
    auto reference = partition_bodies(m_partition(cfg, p));

    std::vector<std::vector<std::vector<int>>> found;
    const int n = cfg.flip_count();
    std::vector<int> part(n, 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
      if (i == n) {
        int nb = blocks;
        std::vector<SpinFlipConfig> bodies(nb);
        for (int q = 0; q < n; ++q) bodies[part[q]].bonds.push_back(cfg.bonds[q]);
        std::vector<Contour> contours;
        for (const auto& b : bodies) {
          if (b.bonds.size() % 2) return;
          if (!is_irreducible(b, p)) return;
        }
        for (const auto& b : bodies) contours.push_back(make_contour(b, p));
        for (std::size_t a = 0; a < contours.size(); ++a)
          for (std::size_t c = a + 1; c < contours.size(); ++c)
            if (!is_compatible(contours[a], contours[c], p)) return;
        std::vector<std::vector<int>> sorted_bodies;
        for (const auto& b : bodies) sorted_bodies.push_back(b.bonds);
        std::sort(sorted_bodies.begin(), sorted_bodies.end());
        found.push_back(sorted_bodies);
        return;
      }
      for (int b = 0; b <= blocks; ++b) {
        part[i] = b;
        rec(i + 1, b == blocks ? blocks + 1 : blocks);
      }
    };
    part[0] = 0;
    rec(1, 1);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == reference);
  }
}

TEST_CASE("trichotomy for compatible pairs") {
  ModelParams p = params_m2();
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    SpinFlipConfig cfg = random_even_config(rng, 8, 32);
    auto parts = m_partition(cfg, p);
    for (int i = 0; i < parts.size(); ++i)
      for (int j = i + 1; j < parts.size(); ++j) {
        const auto& a = parts.contours[i];
        const auto& b = parts.contours[j];
        int holds = (is_positively_compatible(a, b, p) ? 1 : 0) +
                    (interior_subset(a, b) ? 1 : 0) + (interior_subset(b, a) ? 1 : 0);
        CHECK(holds == 1);
      }
  }
}

TEST_CASE("external contours of the figure geometry") {
  // three contours: gamma2 nested in gamma1, gamma3 in the gap between
  // gamma1's minus intervals
  ModelParams p = params_m2();
  Contour g1 = make_contour(cfg_of({0.5, 100.5, 130.5, 230.5}), p);
  Contour g2 = make_contour(cfg_of({45.5, 49.5}), p);
  Contour g3 = make_contour(cfg_of({114.5, 115.5}), p);
  ContourCollection gamma;
  gamma.kind = CollectionKind::m_partition;
  gamma.contours = {g1, g2, g3};
  std::sort(gamma.contours.begin(), gamma.contours.end());

  REQUIRE(is_compatible(g1, g2, p));
  REQUIRE(is_compatible(g1, g3, p));
  REQUIRE(is_compatible(g2, g3, p));
  REQUIRE(interior_subset(g2, g1));
  REQUIRE(is_positively_compatible(g1, g3, p));

  auto ext = external_contours(gamma, p);
  REQUIRE(ext.size() == 2);
  CHECK(ext.contours[0].body == g1.body);
  CHECK(ext.contours[1].body == g3.body);

  // interior collections
  auto inner = interior_collection(g1, gamma, p);
  REQUIRE(inner.size() == 1);
  CHECK(inner.contours[0].body == g2.body);
  auto with_host = iota(g1, gamma, p);
  CHECK(with_host.size() == 2);
  CHECK(interior_collection(g3, gamma, p).empty());

  // a positive collection is its own external set
  ContourCollection positive;
  positive.kind = CollectionKind::m_partition;
  positive.contours = {site_contour(0, p), site_contour(6, p)};
  std::sort(positive.contours.begin(), positive.contours.end());
  CHECK(external_contours(positive, p).size() == 2);

  ContourCollection singleton;
  singleton.kind = CollectionKind::m_partition;
  singleton.contours = {g2};
  CHECK(external_contours(singleton, p).size() == 1);
}

TEST_CASE("interior collection against a non-member host") {
  ModelParams p = params_m2();
  Contour host = make_contour(cfg_of({-0.5, 14.5}), p);
  ContourCollection gamma;
  gamma.kind = CollectionKind::m_partition;
  gamma.contours = {site_contour(7, p)};
  auto inner = interior_collection(host, gamma, p);
  CHECK(inner.size() == 1);
}

TEST_CASE("minus interiors split over external contours") {
  ModelParams p = params_m2();
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    SpinFlipConfig cfg = random_even_config(rng, 8, 28);
    auto gamma = m_partition(cfg, p);
    auto ext = external_contours(gamma, p);
    std::vector<int> combined;
    for (const auto& g : ext.contours) {
      auto sites = iota(g, gamma, p).merged_interior().sites;
      combined.insert(combined.end(), sites.begin(), sites.end());
    }
    std::sort(combined.begin(), combined.end());
    CHECK(std::adjacent_find(combined.begin(), combined.end()) == combined.end());
    CHECK(combined == minus_interior(cfg).sites);
  }
}

TEST_CASE("energy decomposition identity") {
  ModelParams p = params_m2();

  // singleton collapses
  ContourCollection single;
  single.kind = CollectionKind::m_partition;
  single.contours = {site_contour(0, p)};
  CHECK(energy_decomposition_residual(single, p) == doctest::Approx(0.0).epsilon(1e-12));

  // positive pair: H(union) = H1 + H2 - Phi
  ContourCollection pair;
  pair.kind = CollectionKind::m_partition;
  pair.contours = {site_contour(0, p), site_contour(5, p)};
  std::sort(pair.contours.begin(), pair.contours.end());
  double h1 = pair.contours[0].energy, h2 = pair.contours[1].energy;
  double ph = phi(pair.contours[0].interior, pair.contours[1].interior, p);
  double direct = hamiltonian(pair.merged_interior(), p);
  CHECK(direct == doctest::Approx(h1 + h2 - ph).epsilon(1e-12));
  CHECK(energy_decomposition_residual(pair, p) <= 1e-10 * (1 + std::abs(direct)));

  // 200 random M-partitions on a 12-site window, with a field
  ModelParams pf = p;
  pf.field = {{2, 0.25}, {7, -0.4}};
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t mask = static_cast<std::uint32_t>(rng() % ((1u << 12) - 1)) + 1;
    SiteSet s;
    for (int b = 0; b < 12; ++b)
      if (mask & (1u << b)) s.sites.push_back(b);
    auto gamma = m_partition(boundary(s), pf);
    double h = hamiltonian(s, pf) + field_energy(s, pf);
    CHECK(energy_decomposition_residual(gamma, pf) <= 1e-10 * (1.0 + std::abs(h)));
  }
}

TEST_CASE("contour enumeration") {
  ModelParams p = params_m2();
  p.lambda = {0};
  CHECK(enumerate_contours(p, 4).size() == 1);

  p.lambda = {0, 1};
  auto two = enumerate_contours(p, 4);
  REQUIRE(two.size() == 3);

  // cross-check against a brute scan over all subsets of a volume
  p.lambda = ModelParams::interval(0, 5);
  auto fast = enumerate_contours(p, 7);
  int brute = 0;
  for (std::uint32_t mask = 1; mask < (1u << 6); ++mask) {
    SiteSet s;
    for (int b = 0; b < 6; ++b)
      if (mask & (1u << b)) s.sites.push_back(b);
    SpinFlipConfig cfg = boundary(s);
    if (cfg.diameter() <= 7 && is_irreducible(cfg, p)) ++brute;
  }
  CHECK(static_cast<int>(fast.size()) == brute);
  for (std::size_t i = 1; i < fast.size(); ++i) CHECK(fast[i - 1].body < fast[i].body);
  CHECK_THROWS_AS(enumerate_contours(p, 23), std::invalid_argument);
}

TEST_CASE("cover size surrogate") {
  ModelParams p = params_m2();
  Contour g1 = site_contour(0, p);
  CHECK(cover_size(g1) == 1);
  Contour g8 = make_contour(cfg_of({-0.5, 7.5}), p);
  CHECK(cover_size(g8) == 4);
  Contour g5 = make_contour(cfg_of({-0.5, 4.5}), p);
  CHECK(cover_size(g5) == 4);
}

TEST_CASE("hypothesis sweep report") {
  // At M = 2 the lower energy sandwich genuinely fails on nested partitions
  // (smallest case: the interval [0,6] with a hole at 3); the report lists
  // those and nothing else. Raising M clears them.
  ModelParams p = params_m2();
  auto rep = verify_hypotheses(p, 10, {4.0, 5.0, 6.0}, 10);
  CHECK(!rep.violations.empty());
  for (const auto& v : rep.violations) CHECK(v.check == "energy-sandwich-lower");
  CHECK(rep.c0_fit > 0);
  CHECK(rep.c1_fit >= 0);
  CHECK(rep.c2_fit > 0);
  double prev = std::numeric_limits<double>::infinity();
  for (auto [beta, sum] : rep.peierls_sums) {
    (void)beta;
    CHECK(sum < prev);
    prev = sum;
    CHECK(sum < 1.0);
  }

  ModelParams p3 = params_m2();
  p3.m_param = 3.0;
  CHECK(verify_hypotheses(p3, 10, {4.0, 5.0, 6.0}, 10).ok());
}

TEST_CASE("smallest nested sandwich counterexample at M = 2") {
  ModelParams p = params_m2();
  SiteSet holed{{0, 1, 2, 4, 5, 6}};
  auto gamma = m_partition(boundary(holed), p);
  REQUIRE(gamma.size() == 2);
  auto ext = external_contours(gamma, p);
  REQUIRE(ext.size() == 1);
  const Contour& outer = ext.contours[0];
  double h_total = hamiltonian(holed, p);
  double h_rest = hamiltonian(SiteSet{{3}}, p);
  CHECK(h_rest + 0.875 * outer.energy > h_total);          // lower bound fails
  CHECK(h_total <= h_rest + outer.energy);                 // upper bound holds
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "polygas/cluster.hpp"
#include "polygas/oracle.hpp"
#include "polygas/trees.hpp"
#include "polygas/util.hpp"
#include "polygas/zeta.hpp"

using namespace polygas;

namespace {

ClusterTuple complete_graph(int n) {
  ClusterTuple ct;
  ct.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ct.incompat_edges.push_back({i, j});
  return ct;
}

ClusterTuple random_graph(int n, std::mt19937_64& rng, double p_edge = 0.5) {
  ClusterTuple ct;
  ct.n = n;
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < p_edge) ct.incompat_edges.push_back({i, j});
  return ct;
}

ModelParams params_m2(double alpha, double beta, int lo, int hi) {
  ModelParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.m_param = 2.0;
  p.lambda = ModelParams::interval(lo, hi);
  return p;
}

}  // namespace

TEST_CASE("ursell values on small graphs") {
  CHECK(ursell(ClusterTuple{1, {}}) == 1.0);
  CHECK(ursell(ClusterTuple{2, {{0, 1}}}) == -1.0);
  CHECK(ursell(ClusterTuple{2, {}}) == 0.0);
  CHECK(ursell(complete_graph(3)) == 2.0);  // 3 trees - 1 triangle
  CHECK_THROWS_AS(ursell(ClusterTuple{9, {}}), std::invalid_argument);
}

TEST_CASE("ursell of the complete graph is the alternating factorial") {
  for (int n = 1; n <= 6; ++n) {
    double expected = (n % 2 ? 1.0 : -1.0) * static_cast<double>(factorial(n - 1));
    CHECK(ursell(complete_graph(n)) == expected);
  }
}

TEST_CASE("ursell is symmetric under vertex relabeling") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    ClusterTuple ct = random_graph(n, rng);
    double reference = ursell(ct);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    ClusterTuple relabeled;
    relabeled.n = n;
    for (auto [a, b] : ct.incompat_edges) relabeled.incompat_edges.push_back({perm[a], perm[b]});
    CHECK(ursell(relabeled) == reference);
  }
}

TEST_CASE("tree-graph bound dominates the ursell function") {
  CHECK(penrose_bound(complete_graph(3)) == 3);
  CHECK(penrose_bound(ClusterTuple{3, {{0, 1}}}) == 0);  // disconnected
  CHECK(ursell(ClusterTuple{3, {{0, 1}}}) == 0.0);
  // tree-shaped incompatibility graph: a unique spanning tree
  CHECK(penrose_bound(ClusterTuple{4, {{0, 1}, {1, 2}, {1, 3}}}) == 1);

  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    ClusterTuple ct = random_graph(n, rng, 0.4 + 0.2 * (trial % 3));
    CHECK(std::abs(ursell(ct)) <= static_cast<double>(penrose_bound(ct)));
  }
}

TEST_CASE("labeled tree enumeration") {
  CHECK(labeled_trees(1).size() == 1);
  CHECK(labeled_trees(2).size() == 1);
  CHECK(labeled_trees(4).size() == 16);
  CHECK(labeled_trees(5).size() == 125);
  for (int n = 2; n <= 6; ++n) {
    auto trees = labeled_trees(n);
    CHECK(static_cast<long long>(trees.size()) ==
          static_cast<long long>(std::pow(n, n - 2) + 0.5));
    for (const auto& t : trees) {
      CHECK(static_cast<int>(t.edges.size()) == n - 1);
      CHECK(edges_form_connected_spanning(n, t.edges));
    }
    // distinct
    for (std::size_t i = 1; i < trees.size(); ++i) CHECK(!(trees[i - 1] == trees[i]));
  }
  CHECK_THROWS_AS(labeled_trees(10), std::invalid_argument);
}

TEST_CASE("connected spanning subgraphs of a triangle") {
  auto subs = connected_graphs(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(subs.size() == 4);  // three paths and the triangle
}

TEST_CASE("first-order series term is the activity sum") {
  ModelParams p = params_m2(2.0, 2.0, 0, 3);
  auto series = truncated_log_z(p, 1);
  double direct = 0.0;
  for (const auto& poly : enumerate_polymers(p)) direct += activity(poly, p).value;
  CHECK(series.terms[0] == doctest::Approx(direct).epsilon(1e-12));
  CHECK(series.polymer_count == static_cast<int>(enumerate_polymers(p).size()));
}

TEST_CASE("single-site volume reproduces the log(1+z) expansion") {
  ModelParams p = params_m2(2.0, 1.0, 0, 0);
  auto series = truncated_log_z(p, 4);
  double z = std::exp(-4.0 * riemann_zeta(2.0));
  for (int n = 1; n <= 4; ++n) {
    double taylor = (n % 2 ? 1.0 : -1.0) * std::pow(z, n) / n;
    CHECK(series.terms[n - 1] == doctest::Approx(taylor).epsilon(1e-10));
  }
  CHECK(series.reference_log_z == doctest::Approx(std::log1p(z)).epsilon(1e-12));
}

TEST_CASE("series terms shrink in the convergent regime and not at high temperature") {
  ModelParams cold = params_m2(2.0, 6.0, 0, 4);
  auto series = truncated_log_z(cold, 4);
  for (int n = 0; n + 1 < 4; ++n)
    CHECK(std::abs(series.terms[n + 1]) < std::abs(series.terms[n]));
  CHECK(std::abs(series.partial_sums[3] - series.reference_log_z) <=
        1e-2 * std::abs(series.reference_log_z));

  ModelParams hot = params_m2(2.0, 0.1, 0, 4);
  auto diverging = truncated_log_z(hot, 4);
  bool all_shrinking = true;
  for (int n = 0; n + 1 < 4; ++n)
    if (std::abs(diverging.terms[n + 1]) >= std::abs(diverging.terms[n]))
      all_shrinking = false;
  CHECK(!all_shrinking);

  ModelParams big = params_m2(2.0, 1.0, 0, 6);
  CHECK_THROWS_AS(truncated_log_z(big, 2), std::invalid_argument);
}

TEST_CASE("peierls sums over contours through the origin") {
  ModelParams p = params_m2(2.0, 6.0, 0, 4);

  auto tiny = peierls_sum(p, 6.0, 1);
  CHECK(tiny.origin_sum ==
        doctest::Approx(std::exp(-6.0 * 4.0 * riemann_zeta(2.0))).epsilon(1e-12));
  CHECK(tiny.sandwich_ok);

  double prev = std::numeric_limits<double>::infinity();
  for (double beta : {4.0, 5.0, 6.0, 7.0}) {
    auto sums = peierls_sum(p, beta, 10);
    CHECK(sums.sandwich_ok);
    CHECK(sums.class_sum <= sums.origin_sum);
    CHECK(sums.origin_sum == doctest::Approx(sums.class_weighted).epsilon(1e-12));
    CHECK(sums.origin_sum < prev);
    prev = sums.origin_sum;
  }
}

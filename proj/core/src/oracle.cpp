#include "polygas/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "polygas/util.hpp"
#include "polygas/zeta.hpp"

namespace polygas {

namespace {

int worker_count() {
  if (const char* env = std::getenv("POLYGAS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

struct SumRequest {
  bool site_sums = false;                       ///< per-site minus weights
  std::vector<std::pair<int, int>> pair_sums;   ///< indices into lambda
  std::vector<int> wick_indices;                ///< <= 5 indices into lambda
};

struct RawSums {
  double z = 0;
  std::vector<double> site;
  std::vector<double> pair;
  std::vector<double> wick;  ///< indexed by subset mask of wick_indices

  void resize(std::size_t sites, std::size_t pairs, std::size_t wick_bits) {
    site.assign(sites, 0.0);
    pair.assign(pairs, 0.0);
    wick.assign(std::size_t{1} << wick_bits, 0.0);
  }
};

/// One chunk of the Gray-code walk, sequential and self-contained.
RawSums run_chunk(const ModelParams& params, BoundaryCondition bc,
                  const SumRequest& req, const std::vector<std::vector<double>>& coupling,
                  double four_zeta, const std::vector<double>& field2,
                  std::uint64_t begin, std::uint64_t end) {
  const int n = static_cast<int>(params.lambda.size());
  const double field_sign = bc == BoundaryCondition::plus ? 1.0 : -1.0;
  RawSums acc;
  acc.resize(req.site_sums ? n : 0, req.pair_sums.size(), req.wick_indices.size());
  KahanSum z;
  std::vector<KahanSum> site(acc.site.size()), pair(acc.pair.size()), wick(acc.wick.size());

  auto gray = [](std::uint64_t i) { return i ^ (i >> 1); };
  std::uint64_t mask = gray(begin);

  // energy of the starting configuration from scratch
  double h = 0.0, e = 0.0;
  {
    std::vector<int> members;
    for (int b = 0; b < n; ++b)
      if (mask >> b & 1) members.push_back(b);
    for (std::size_t i = 0; i < members.size(); ++i) {
      h += four_zeta;
      for (std::size_t j = 0; j < i; ++j) h -= coupling[members[i]][members[j]];
      e += field2[members[i]];
    }
  }

  for (std::uint64_t i = begin;; ++i) {
    double w = std::exp(-params.beta * (h + field_sign * e));
    z.add(w);
    if (req.site_sums || !req.pair_sums.empty() || !req.wick_indices.empty()) {
      if (req.site_sums) {
        std::uint64_t bits = mask;
        while (bits) {
          int b = std::countr_zero(bits);
          bits &= bits - 1;
          site[b].add(w);
        }
      }
      for (std::size_t p = 0; p < req.pair_sums.size(); ++p) {
        auto [a, b] = req.pair_sums[p];
        if ((mask >> a & 1) && (mask >> b & 1)) pair[p].add(w);
      }
      if (!req.wick_indices.empty()) {
        std::uint32_t sub = 0;
        for (std::size_t k = 0; k < req.wick_indices.size(); ++k)
          if (mask >> req.wick_indices[k] & 1) sub |= 1u << k;
        wick[sub].add(w);
      }
    }
    if (i + 1 == end) break;
    int b = std::countr_zero(i + 1);  // bit flipped by the next Gray step
    double delta = 0.0;
    std::uint64_t bits = mask & ~(std::uint64_t{1} << b);
    while (bits) {
      int j = std::countr_zero(bits);
      bits &= bits - 1;
      delta += coupling[b][j];
    }
    if (mask >> b & 1) {
      h += -four_zeta + delta;
      e -= field2[b];
    } else {
      h += four_zeta - delta;
      e += field2[b];
    }
    mask ^= std::uint64_t{1} << b;
  }

  acc.z = z.value();
  for (std::size_t i = 0; i < site.size(); ++i) acc.site[i] = site[i].value();
  for (std::size_t i = 0; i < pair.size(); ++i) acc.pair[i] = pair[i].value();
  for (std::size_t i = 0; i < wick.size(); ++i) acc.wick[i] = wick[i].value();
  return acc;
}

RawSums run_sums(const ModelParams& params, BoundaryCondition bc, const SumRequest& req) {
  params.validate();
  const int n = static_cast<int>(params.lambda.size());
  if (n > 22) throw std::invalid_argument("oracle: |lambda| > 22 refused");

  const double four_zeta = 4.0 * riemann_zeta(params.alpha);
  std::vector<std::vector<double>> coupling(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        coupling[i][j] = 4.0 * std::pow(
            static_cast<double>(std::abs(params.lambda[i] - params.lambda[j])),
            -params.alpha);
  std::vector<double> field2(n, 0.0);
  for (int i = 0; i < n; ++i) field2[i] = 2.0 * params.field_at(params.lambda[i]);

  const std::uint64_t total = std::uint64_t{1} << n;
  // fixed chunk layout, independent of the worker count, merged in order
  const int chunks = n >= 14 ? 64 : 1;
  const std::uint64_t chunk_size = total / chunks;

  std::vector<RawSums> partial(chunks);
  int workers = std::min(worker_count(), chunks);
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c)
      partial[c] = run_chunk(params, bc, req, coupling, four_zeta, field2,
                             c * chunk_size, (c + 1) * chunk_size);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&]() {
        while (true) {
          int c = next.fetch_add(1);
          if (c >= chunks) break;
          partial[c] = run_chunk(params, bc, req, coupling, four_zeta, field2,
                                 c * chunk_size, (c + 1) * chunk_size);
        }
      });
    for (auto& t : pool) t.join();
  }

  RawSums out;
  out.resize(req.site_sums ? n : 0, req.pair_sums.size(), req.wick_indices.size());
  KahanSum z;
  std::vector<KahanSum> site(out.site.size()), pair(out.pair.size()), wick(out.wick.size());
  for (const auto& p : partial) {
    z.add(p.z);
    for (std::size_t i = 0; i < site.size(); ++i) site[i].add(p.site[i]);
    for (std::size_t i = 0; i < pair.size(); ++i) pair[i].add(p.pair[i]);
    for (std::size_t i = 0; i < wick.size(); ++i) wick[i].add(p.wick[i]);
  }
  out.z = z.value();
  for (std::size_t i = 0; i < site.size(); ++i) out.site[i] = site[i].value();
  for (std::size_t i = 0; i < pair.size(); ++i) out.pair[i] = pair[i].value();
  for (std::size_t i = 0; i < wick.size(); ++i) out.wick[i] = wick[i].value();
  return out;
}

int lambda_index(const ModelParams& params, int x) {
  auto it = std::lower_bound(params.lambda.begin(), params.lambda.end(), x);
  if (it == params.lambda.end() || *it != x)
    throw std::invalid_argument("oracle: site outside lambda");
  return static_cast<int>(it - params.lambda.begin());
}

}  // namespace

double exact_partition_function(const ModelParams& params, BoundaryCondition bc) {
  return run_sums(params, bc, {}).z;
}

double exact_log_partition_function(const ModelParams& params, BoundaryCondition bc) {
  return std::log(run_sums(params, bc, {}).z);
}

double expectation(const ModelParams& params,
                   const std::function<double(std::uint64_t)>& observable) {
  params.validate();
  const int n = static_cast<int>(params.lambda.size());
  if (n > 22) throw std::invalid_argument("oracle: |lambda| > 22 refused");
  const double four_zeta = 4.0 * riemann_zeta(params.alpha);
  std::vector<std::vector<double>> coupling(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        coupling[i][j] = 4.0 * std::pow(
            static_cast<double>(std::abs(params.lambda[i] - params.lambda[j])),
            -params.alpha);
  KahanSum z, num;
  std::uint64_t mask = 0;
  double h = 0.0, e = 0.0;
  for (std::uint64_t i = 0;; ++i) {
    double w = std::exp(-params.beta * (h + e));
    z.add(w);
    num.add(w * observable(mask));
    if (i + 1 == (std::uint64_t{1} << n)) break;
    int b = std::countr_zero(i + 1);
    double delta = 0.0;
    std::uint64_t bits = mask & ~(std::uint64_t{1} << b);
    while (bits) {
      int j = std::countr_zero(bits);
      bits &= bits - 1;
      delta += coupling[b][j];
    }
    if (mask >> b & 1) {
      h += -four_zeta + delta;
      e -= 2.0 * params.field_at(params.lambda[b]);
    } else {
      h += four_zeta - delta;
      e += 2.0 * params.field_at(params.lambda[b]);
    }
    mask ^= std::uint64_t{1} << b;
  }
  return num.value() / z.value();
}

double minus_probability(const ModelParams& params, int x) {
  SumRequest req;
  req.site_sums = true;
  RawSums s = run_sums(params, BoundaryCondition::plus, req);
  return s.site[lambda_index(params, x)] / s.z;
}

double magnetization(const ModelParams& params, int x) {
  return 1.0 - 2.0 * minus_probability(params, x);
}

double truncated_two_point(const ModelParams& params, int x, int y) {
  SumRequest req;
  req.site_sums = true;
  int ix = lambda_index(params, x), iy = lambda_index(params, y);
  if (ix != iy) req.pair_sums.push_back({ix, iy});
  RawSums s = run_sums(params, BoundaryCondition::plus, req);
  double mx = s.site[ix] / s.z;
  if (ix == iy) return 4.0 * mx * (1.0 - mx);
  double my = s.site[iy] / s.z;
  double mxy = s.pair[0] / s.z;
  return 4.0 * (mxy - mx * my);
}

double wick_product(const ModelParams& params, const SiteSet& a_set) {
  a_set.validate();
  const int k = a_set.size();
  if (k < 1 || k > 5) throw std::invalid_argument("wick_product: |A| out of [1, 5]");
  if (k == 1) return 0.0;
  SumRequest req;
  for (int a : a_set.sites) req.wick_indices.push_back(lambda_index(params, a));
  RawSums s = run_sums(params, BoundaryCondition::plus, req);

  // joint minus moments m[B] = < prod_{a in B} n_a >
  std::vector<double> m(std::size_t{1} << k, 0.0);
  for (std::uint32_t b = 0; b < (1u << k); ++b) {
    KahanSum acc;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask)
      if ((mask & b) == b) acc.add(s.wick[mask]);
    m[b] = acc.value() / s.z;
  }
  // < prod (sigma_a - <sigma_a>) > = (-2)^k < prod (n_a - mu_a) >
  double result = 0.0;
  for (std::uint32_t b = 0; b < (1u << k); ++b) {
    double term = m[b];
    int absent = 0;
    for (int i = 0; i < k; ++i)
      if (!(b >> i & 1)) {
        term *= m[std::uint32_t{1} << i];
        ++absent;
      }
    result += (absent % 2 ? -1.0 : 1.0) * term;
  }
  double sign_scale = 1.0;
  for (int i = 0; i < k; ++i) sign_scale *= -2.0;
  return sign_scale * result;
}

CorrelationTable correlation_table(const ModelParams& params,
                                   const std::vector<std::pair<int, int>>& pairs) {
  SumRequest req;
  req.site_sums = true;
  for (auto [x, y] : pairs)
    if (x != y) req.pair_sums.push_back({lambda_index(params, x), lambda_index(params, y)});
  RawSums s = run_sums(params, BoundaryCondition::plus, req);

  CorrelationTable table;
  table.lambda.sites = params.lambda;
  table.beta = params.beta;
  table.alpha = params.alpha;
  std::vector<double> mu(params.lambda.size());
  for (std::size_t i = 0; i < params.lambda.size(); ++i) {
    mu[i] = s.site[i] / s.z;
    table.magnetizations[params.lambda[i]] = 1.0 - 2.0 * mu[i];
  }
  std::size_t p = 0;
  for (auto [x, y] : pairs) {
    double value;
    int ix = lambda_index(params, x), iy = lambda_index(params, y);
    if (x == y) {
      value = 4.0 * mu[ix] * (1.0 - mu[ix]);
    } else {
      double mxy = s.pair[p++] / s.z;
      value = 4.0 * (mxy - mu[ix] * mu[iy]);
    }
    table.pairs[{std::min(x, y), std::max(x, y)}] = value;
  }
  return table;
}

DecayFit decay_fit(const CorrelationTable& table, int r_min, int r_max) {
  std::vector<double> xs, ys;
  for (int r = r_min; r <= r_max; ++r) {
    auto it = table.pairs.find({0, r});
    if (it == table.pairs.end()) continue;
    if (!(it->second > 0.0))
      throw std::invalid_argument("decay_fit: non-positive correlation in range");
    xs.push_back(std::log(static_cast<double>(r)));
    ys.push_back(std::log(it->second));
  }
  if (xs.size() < 3)
    throw std::invalid_argument("decay_fit: fewer than 3 separations in range");
  const int k = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < k; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  DecayFit fit;
  fit.points = k;
  double denom = k * sxx - sx * sx;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  double ss = 0;
  for (int i = 0; i < k; ++i) {
    double res = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss += res * res;
  }
  fit.residual = std::sqrt(ss / k);
  return fit;
}

}  // namespace polygas

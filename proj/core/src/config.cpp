#include "polygas/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polygas/util.hpp"
#include "polygas/zeta.hpp"

namespace polygas {

void SpinFlipConfig::validate() const {
  if (bonds.size() % 2 != 0)
    throw std::invalid_argument("spin-flip config: bond count must be even");
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    if ((bonds[i] & 1) == 0)
      throw std::invalid_argument("spin-flip config: bonds must be odd integers");
    if (i > 0 && bonds[i] <= bonds[i - 1])
      throw std::invalid_argument("spin-flip config: bonds must be strictly increasing");
  }
}

SpinFlipConfig SpinFlipConfig::from_half_integers(const std::vector<double>& positions) {
  SpinFlipConfig cfg;
  cfg.bonds.reserve(positions.size());
  for (double p : positions) {
    double doubled = 2.0 * p;
    long long v = std::llround(doubled);
    if (std::abs(doubled - static_cast<double>(v)) > 1e-9 || (v % 2 + 2) % 2 != 1)
      throw std::invalid_argument("spin-flip config: positions must be half-integers");
    cfg.bonds.push_back(static_cast<int>(v));
  }
  std::sort(cfg.bonds.begin(), cfg.bonds.end());
  cfg.validate();
  return cfg;
}

std::vector<double> SpinFlipConfig::to_half_integers() const {
  std::vector<double> out;
  out.reserve(bonds.size());
  for (int b : bonds) out.push_back(b / 2.0);
  return out;
}

bool SiteSet::contains(int x) const {
  return std::binary_search(sites.begin(), sites.end(), x);
}

void SiteSet::validate() const {
  if (!std::is_sorted(sites.begin(), sites.end()) ||
      std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw std::invalid_argument("site set: must be sorted and duplicate-free");
}

SpinFlipConfig boundary(const SiteSet& minus_sites) {
  minus_sites.validate();
  SpinFlipConfig cfg;
  const auto& s = minus_sites.sites;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 0 || s[i - 1] != s[i] - 1) cfg.bonds.push_back(2 * s[i] - 1);
    if (i + 1 == s.size() || s[i + 1] != s[i] + 1) cfg.bonds.push_back(2 * s[i] + 1);
  }
  return cfg;
}

SpinFlipConfig boundary(const std::map<int, int>& sigma) {
  SiteSet minus;
  for (const auto& [x, s] : sigma) {
    if (s != 1 && s != -1)
      throw std::invalid_argument("boundary: spins must be +1 or -1");
    if (s == -1) minus.sites.push_back(x);
  }
  return boundary(minus);
}

SiteSet minus_interior(const SpinFlipConfig& cfg) {
  cfg.validate();
  SiteSet out;
  for (std::size_t i = 0; i + 1 < cfg.bonds.size(); i += 2) {
    // sites strictly between bonds b_{2i-1} and b_{2i}
    int lo = (cfg.bonds[i] + 1) / 2;
    int hi = (cfg.bonds[i + 1] - 1) / 2;
    for (int x = lo; x <= hi; ++x) out.sites.push_back(x);
  }
  return out;
}

SpinFlipConfig merge_configs(const std::vector<SpinFlipConfig>& parts) {
  SpinFlipConfig out;
  for (const auto& p : parts) out.bonds.insert(out.bonds.end(), p.bonds.begin(), p.bonds.end());
  std::sort(out.bonds.begin(), out.bonds.end());
  if (std::adjacent_find(out.bonds.begin(), out.bonds.end()) != out.bonds.end())
    throw std::invalid_argument("merge_configs: bodies are not disjoint");
  return out;
}

double hamiltonian(const SiteSet& minus_sites, const ModelParams& params) {
  if (minus_sites.empty()) return 0.0;
  const double four_zeta = 4.0 * riemann_zeta(params.alpha);
  const auto& s = minus_sites.sites;
  std::vector<double> per_site(s.size());
  std::vector<double> inner;
  inner.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    inner.clear();
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      inner.push_back(2.0 * std::pow(static_cast<double>(std::abs(s[i] - s[j])),
                                     -params.alpha));
    }
    per_site[i] = four_zeta - pairwise_sum(inner);
  }
  return pairwise_sum(per_site);
}

double hamiltonian(const SpinFlipConfig& cfg, const ModelParams& params) {
  return hamiltonian(minus_interior(cfg), params);
}

double phi(const SiteSet& a, const SiteSet& b, const ModelParams& params) {
  if (a.empty() || b.empty()) throw std::invalid_argument("phi: empty site set");
  std::vector<double> terms;
  terms.reserve(a.sites.size() * b.sites.size());
  for (int x : a.sites)
    for (int y : b.sites) {
      if (x == y) throw std::invalid_argument("phi: site sets overlap");
      terms.push_back(4.0 * std::pow(static_cast<double>(std::abs(x - y)),
                                     -params.alpha));
    }
  return pairwise_sum(terms);
}

double field_energy(const SiteSet& minus_sites, const ModelParams& params) {
  if (params.field.empty()) return 0.0;
  std::vector<double> terms;
  for (int x : minus_sites.sites) {
    double h = params.field_at(x);
    if (h != 0.0) terms.push_back(2.0 * h);
  }
  return pairwise_sum(terms);
}

double field_energy(const SpinFlipConfig& cfg, const ModelParams& params) {
  return field_energy(minus_interior(cfg), params);
}

double field_energy_abs(const SiteSet& minus_sites, const ModelParams& params) {
  if (params.field.empty()) return 0.0;
  std::vector<double> terms;
  for (int x : minus_sites.sites) {
    double h = params.field_at(x);
    if (h != 0.0) terms.push_back(2.0 * std::abs(h));
  }
  return pairwise_sum(terms);
}

double total_energy(const SpinFlipConfig& cfg, const ModelParams& params) {
  SiteSet s = minus_interior(cfg);
  return hamiltonian(s, params) + field_energy(s, params);
}

}  // namespace polygas

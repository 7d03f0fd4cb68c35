#include "xyzglass/phase_region.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <string>

#include "xyzglass/parallel.hpp"

namespace xyzglass {

void RegionQuery::validate() const {
  for (Axis a : kAxes) {
    if (!(delta[index(a)] > 0.0) || !std::isfinite(delta[index(a)])) {
      throw ConfigError("Delta_2^" + std::string(axis_name(a)) + " must be > 0");
    }
    if (!std::isfinite(mu[index(a)])) throw ConfigError("mu_2 must be finite");
  }
  if (!(beta_t > 0.0) || !std::isfinite(beta_t)) {
    throw ConfigError("beta_t must be supplied and > 0 (no default is assumed)");
  }
}

AxisTriple RegionQuery::ratios() const {
  return {mu[0] / delta[0], mu[1] / delta[1], mu[2] / delta[2]};
}

double beta2(const RegionQuery& q, Axis u) {
  q.validate();
  const auto r = q.ratios();
  const auto [v, w] = other_axes(u);
  return std::hypot(r[index(v)], r[index(w)]);
}

bool in_subspace(const RegionQuery& q, Axis u) {
  const auto [v, w] = other_axes(u);
  return beta2(q, v) < q.beta_t && beta2(q, w) < q.beta_t;
}

Membership region_membership(const RegionQuery& q) {
  Membership m;
  for (Axis a : kAxes) m.in_axis[index(a)] = in_subspace(q, a);
  m.in_union = m.in_axis[0] || m.in_axis[1] || m.in_axis[2];
  return m;
}

double GridAxis::value(int k) const {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

std::uint64_t RegionGrid::size() const {
  std::uint64_t total = 1;
  for (const auto& a : mu) {
    if (a.count < 1) throw ConfigError("grid axis count must be >= 1");
    total *= static_cast<std::uint64_t>(a.count);
    if (total > 10'000'000ULL) throw CapacityError("phase-region grid exceeds the guard of 1e7 points");
  }
  return total;
}

std::vector<RegionRow> sample_region(const RegionGrid& grid, double beta_t, int threads) {
  const std::uint64_t total = grid.size();
  std::vector<RegionRow> rows(total);
  const auto ny = static_cast<std::uint64_t>(grid.mu[1].count);
  const auto nz = static_cast<std::uint64_t>(grid.mu[2].count);
  const std::uint64_t chunk = 65536;
  const std::size_t n_chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    const std::uint64_t hi = std::min<std::uint64_t>(total, (c + 1) * chunk);
    for (std::uint64_t k = c * chunk; k < hi; ++k) {
      RegionQuery q;
      q.delta = grid.delta;
      q.beta_t = beta_t;
      q.mu = {grid.mu[0].value(static_cast<int>(k / (ny * nz))), grid.mu[1].value(static_cast<int>((k / nz) % ny)),
              grid.mu[2].value(static_cast<int>(k % nz))};
      rows[k] = {q.ratios(), region_membership(q)};
    }
  });
  return rows;
}

void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows) {
  os << "ratio_x,ratio_y,ratio_z,in_Sx,in_Sy,in_Sz,in_union\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.ratio[0] << ',' << r.ratio[1] << ',' << r.ratio[2] << ',' << int(r.membership.in_axis[0]) << ','
       << int(r.membership.in_axis[1]) << ',' << int(r.membership.in_axis[2]) << ',' << int(r.membership.in_union)
       << '\n';
  }
}

}  // namespace xyzglass

#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "xyzglass/types.hpp"

namespace xyzglass {

/// A p = 2 coupling point (Delta_2^w, mu_2^w) and the triple-point inverse
/// temperature beta_t of the classical Edwards-Anderson model. beta_t has no
/// default: it must come from the literature.
struct RegionQuery {
  AxisTriple delta{1.0, 1.0, 1.0};
  AxisTriple mu{0.0, 0.0, 0.0};
  double beta_t = 0.0;

  /// Throws ConfigError unless every Delta > 0 and beta_t > 0.
  void validate() const;
  /// mu_2^w / Delta_2^w; membership depends on these three numbers only.
  AxisTriple ratios() const;
};

/// beta_2^u = sqrt(r_v^2 + r_w^2) over the two axes v, w != u.
double beta2(const RegionQuery& q, Axis u);

/// Point lies in the pyramid S^u: beta_2^v < beta_t and beta_2^w < beta_t.
bool in_subspace(const RegionQuery& q, Axis u);

struct Membership {
  std::array<bool, 3> in_axis{};
  bool in_union = false;
};

/// Per-axis membership and the union flag. A point in the union has
/// vanishing spontaneous magnetization on every axis.
Membership region_membership(const RegionQuery& q);

/// Evenly spaced samples (count >= 1; count == 1 yields lo).
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  double value(int k) const;
};

/// Grid over mu_2^x, mu_2^y, mu_2^z at fixed widths.
struct RegionGrid {
  std::array<GridAxis, 3> mu;
  AxisTriple delta{1.0, 1.0, 1.0};

  /// Total points; throws CapacityError above 1e7.
  std::uint64_t size() const;
};

struct RegionRow {
  AxisTriple ratio{};
  Membership membership;
};

/// Rows in x-major, z-fastest order.
std::vector<RegionRow> sample_region(const RegionGrid& grid, double beta_t, int threads = 1);

/// CSV: ratio_x,ratio_y,ratio_z,in_Sx,in_Sy,in_Sz,in_union (header included).
void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows);

}  // namespace xyzglass

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace xyzglass {

inline constexpr int kClassicalSiteCap = 24;
inline constexpr int kQuantumSiteCap = 14;

using Coordinate = std::vector<int>;

/// d-dimensional cubic lattice [0, L-1]^d with sites in lexicographic order.
/// Site index i is also the tensor slot of site i in the Hilbert space.
struct Lattice {
  int dim = 0;
  int length = 0;
  std::vector<Coordinate> sites;

  int volume() const { return static_cast<int>(sites.size()); }
  /// Index of a coordinate already reduced into [0, L-1]^d.
  int index_of(const Coordinate& c) const;
};

enum class Boundary { open, periodic };

const char* boundary_name(Boundary b);
Boundary parse_boundary(const char* name);

/// A translation shape A_p: p distinct offsets, one of them the origin.
struct InteractionShape {
  int p = 0;
  std::vector<Coordinate> offsets;

  /// Checks origin membership, distinctness, |offsets| == p and dimension.
  void validate(int dim) const;
};

/// Site-index subsets of size p (sorted ascending), deduplicated.
struct BondFamily {
  int p = 0;
  Boundary boundary = Boundary::open;
  std::vector<std::vector<int>> bonds;

  std::size_t size() const { return bonds.size(); }
};

/// Bit mask with bit i set for every site i in `sites`.
std::uint64_t site_mask(std::span<const int> sites);

/// Throws CapacityError when L^d exceeds `site_cap`.
Lattice build_lattice(int dim, int length, int site_cap = kClassicalSiteCap);

/// Translates the shape over every site. Throws DomainError when no translate fits.
BondFamily generate_bonds(const Lattice& lattice, const InteractionShape& shape, Boundary boundary);

/// Merges several shapes of the same p into one deduplicated family.
BondFamily generate_bonds(const Lattice& lattice, std::span<const InteractionShape> shapes,
                          Boundary boundary);

/// Groups shapes by p and returns one family per distinct p, ascending in p.
std::vector<BondFamily> generate_families(const Lattice& lattice,
                                          std::span<const InteractionShape> shapes,
                                          Boundary boundary);

/// Nearest-neighbour pair shapes, one per lattice direction.
std::vector<InteractionShape> nearest_neighbour_shapes(int dim);

/// The single-site shape {0} used for the p = 1 field.
InteractionShape single_site_shape(int dim);

}  // namespace xyzglass

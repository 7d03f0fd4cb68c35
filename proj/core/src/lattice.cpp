#include "xyzglass/lattice.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>
#include <string>

#include "xyzglass/types.hpp"

namespace xyzglass {

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw ConfigError("unknown axis '" + std::string(name) + "' (expected x, y or z)");
}

const char* boundary_name(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

Boundary parse_boundary(const char* name) {
  if (std::strcmp(name, "open") == 0) return Boundary::open;
  if (std::strcmp(name, "periodic") == 0) return Boundary::periodic;
  throw ConfigError(std::string("unknown boundary '") + name + "' (expected open or periodic)");
}

int Lattice::index_of(const Coordinate& c) const {
  int idx = 0;
  for (int k = 0; k < dim; ++k) idx = idx * length + c[k];
  return idx;
}

std::uint64_t site_mask(std::span<const int> sites) {
  std::uint64_t m = 0;
  for (int s : sites) m |= std::uint64_t{1} << s;
  return m;
}

Lattice build_lattice(int dim, int length, int site_cap) {
  if (dim < 1) throw ConfigError("lattice dimension must be >= 1");
  if (length < 1) throw ConfigError("lattice length must be >= 1");
  long long volume = 1;
  for (int k = 0; k < dim; ++k) {
    volume *= length;
    if (volume > site_cap) {
      throw CapacityError("lattice volume L^d exceeds the site cap of " + std::to_string(site_cap));
    }
  }
  Lattice lat{dim, length, {}};
  lat.sites.reserve(static_cast<std::size_t>(volume));
  Coordinate c(dim, 0);
  for (long long n = 0; n < volume; ++n) {
    lat.sites.push_back(c);
    for (int k = dim - 1; k >= 0; --k) {
      if (++c[k] < length) break;
      c[k] = 0;
    }
  }
  return lat;
}

void InteractionShape::validate(int dim) const {
  if (p < 1) throw ConfigError("shape p must be >= 1");
  if (static_cast<int>(offsets.size()) != p) {
    throw ConfigError("shape for p=" + std::to_string(p) + " has " +
                      std::to_string(offsets.size()) + " offsets");
  }
  std::set<Coordinate> seen;
  bool has_origin = false;
  for (const auto& o : offsets) {
    if (static_cast<int>(o.size()) != dim) {
      throw ConfigError("shape offset dimension does not match lattice dimension");
    }
    if (!seen.insert(o).second) throw ConfigError("shape offsets must be distinct");
    if (std::all_of(o.begin(), o.end(), [](int v) { return v == 0; })) has_origin = true;
  }
  if (!has_origin) throw ConfigError("shape must contain the origin");
}

namespace {

void append_translates(const Lattice& lat, const InteractionShape& shape, Boundary boundary,
                       std::set<std::vector<int>>& seen, std::vector<std::vector<int>>& out) {
  for (const auto& base : lat.sites) {
    std::vector<int> bond;
    bond.reserve(shape.offsets.size());
    bool inside = true;
    for (const auto& off : shape.offsets) {
      Coordinate c(lat.dim);
      for (int k = 0; k < lat.dim; ++k) {
        int v = base[k] + off[k];
        if (boundary == Boundary::periodic) {
          v %= lat.length;
          if (v < 0) v += lat.length;
        } else if (v < 0 || v >= lat.length) {
          inside = false;
          break;
        }
        c[k] = v;
      }
      if (!inside) break;
      bond.push_back(lat.index_of(c));
    }
    if (!inside) continue;
    std::sort(bond.begin(), bond.end());
    // Wrap-around on tiny periodic lattices can fold offsets onto one site.
    if (std::adjacent_find(bond.begin(), bond.end()) != bond.end()) continue;
    if (seen.insert(bond).second) out.push_back(std::move(bond));
  }
}

}  // namespace

BondFamily generate_bonds(const Lattice& lattice, std::span<const InteractionShape> shapes,
                          Boundary boundary) {
  if (shapes.empty()) throw ConfigError("no shapes given");
  BondFamily fam{shapes.front().p, boundary, {}};
  std::set<std::vector<int>> seen;
  for (const auto& s : shapes) {
    s.validate(lattice.dim);
    if (s.p != fam.p) throw ConfigError("shapes merged into one family must share p");
    append_translates(lattice, s, boundary, seen, fam.bonds);
  }
  if (fam.bonds.empty()) {
    throw DomainError("empty bond family for p=" + std::to_string(fam.p) +
                      ": no translate of the shape fits in the lattice");
  }
  return fam;
}

BondFamily generate_bonds(const Lattice& lattice, const InteractionShape& shape,
                          Boundary boundary) {
  return generate_bonds(lattice, std::span<const InteractionShape>(&shape, 1), boundary);
}

std::vector<BondFamily> generate_families(const Lattice& lattice,
                                          std::span<const InteractionShape> shapes,
                                          Boundary boundary) {
  std::map<int, std::vector<InteractionShape>> by_p;
  for (const auto& s : shapes) by_p[s.p].push_back(s);
  std::vector<BondFamily> out;
  for (const auto& [p, group] : by_p) out.push_back(generate_bonds(lattice, group, boundary));
  return out;
}

std::vector<InteractionShape> nearest_neighbour_shapes(int dim) {
  std::vector<InteractionShape> out;
  for (int k = 0; k < dim; ++k) {
    Coordinate step(dim, 0);
    step[k] = 1;
    out.push_back({2, {Coordinate(dim, 0), step}});
  }
  return out;
}

InteractionShape single_site_shape(int dim) { return {1, {Coordinate(dim, 0)}}; }

}  // namespace xyzglass

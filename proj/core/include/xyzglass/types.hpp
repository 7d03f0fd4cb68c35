#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace xyzglass {

enum class Axis : int { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes = {Axis::x, Axis::y, Axis::z};

constexpr int index(Axis a) { return static_cast<int>(a); }

std::string_view axis_name(Axis a);

/// Parses "x", "y" or "z". Throws ConfigError otherwise.
Axis parse_axis(std::string_view name);

/// The two axes different from `u`, in cyclic order (u, v, w).
constexpr std::pair<Axis, Axis> other_axes(Axis u) {
  const int i = index(u);
  return {static_cast<Axis>((i + 1) % 3), static_cast<Axis>((i + 2) % 3)};
}

/// The axis that is neither `a` nor `b` (a != b).
constexpr Axis third_axis(Axis a, Axis b) {
  return static_cast<Axis>(3 - index(a) - index(b));
}

/// Per-axis real triple (mean, std-dev, ratio, ...).
using AxisTriple = std::array<double, 3>;

// Error hierarchy. The CLI maps these onto exit codes.

/// Requested size exceeds an implementation cap (Hilbert space, enumeration, grid).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical domain violation (zero variance where a ratio is needed, bad step, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed user input or inconsistent model description.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace xyzglass

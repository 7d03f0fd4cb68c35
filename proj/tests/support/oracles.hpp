#pragma once

#include "xyzglass/reference.hpp"

namespace xyzglass {
namespace oracle = reference;
}

#pragma once

#include "xyzglass/classical_gibbs.hpp"
#include "xyzglass/disorder.hpp"
#include "xyzglass/estimator.hpp"
#include "xyzglass/identities.hpp"
#include "xyzglass/lattice.hpp"
#include "xyzglass/operators.hpp"
#include "xyzglass/parallel.hpp"
#include "xyzglass/phase_region.hpp"
#include "xyzglass/quadrature.hpp"
#include "xyzglass/quantum_gibbs.hpp"
#include "xyzglass/types.hpp"

#pragma once

// Umbrella header for the dwf library: finite-group backends, abelian
// decomposition, dense pair sets, the coset-window construction, and the
// brute-force verification oracles.

#include "dwf/abelian.hpp"
#include "dwf/bitmatrix.hpp"
#include "dwf/errors.hpp"
#include "dwf/group.hpp"
#include "dwf/oracle.hpp"
#include "dwf/pairset.hpp"
#include "dwf/rational.hpp"
#include "dwf/splitmix64.hpp"
#include "dwf/window.hpp"

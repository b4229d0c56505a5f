#pragma once

// Umbrella header: exact-arithmetic sheaf cohomology on rational ruled toric
// surfaces with two marked fibers, plus cyclic branched covering invariants.

#include "toricoh/arith.hpp"
#include "toricoh/delta.hpp"
#include "toricoh/surface.hpp"
#include "toricoh/cohomology.hpp"
#include "toricoh/covering.hpp"
#include "toricoh/io.hpp"

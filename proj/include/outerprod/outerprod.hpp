#pragma once

// Umbrella header.

#include "outerprod/admissibility.hpp"
#include "outerprod/bounds.hpp"
#include "outerprod/compensated.hpp"
#include "outerprod/errors.hpp"
#include "outerprod/extended_real.hpp"
#include "outerprod/harness.hpp"
#include "outerprod/integrals.hpp"
#include "outerprod/matrix.hpp"
#include "outerprod/rng.hpp"
#include "outerprod/serialize.hpp"
#include "outerprod/spectrum.hpp"
#include "outerprod/vector.hpp"

#pragma once

// Umbrella header for the GWL library.

#include "gwl/competitors.hpp"
#include "gwl/datasets.hpp"
#include "gwl/distribution.hpp"
#include "gwl/estimation.hpp"
#include "gwl/gof.hpp"
#include "gwl/minimize.hpp"
#include "gwl/quadrature.hpp"
#include "gwl/rng.hpp"
#include "gwl/rootfind.hpp"
#include "gwl/simstudy.hpp"
#include "gwl/special.hpp"

#pragma once

// Umbrella header.

#include "wflow/field_io.hpp"
#include "wflow/gaussian_ensemble.hpp"
#include "wflow/grid.hpp"
#include "wflow/models.hpp"
#include "wflow/oracle.hpp"
#include "wflow/orbits.hpp"
#include "wflow/parallel.hpp"
#include "wflow/special_functions.hpp"
#include "wflow/taylor_jet.hpp"
#include "wflow/td_ensemble.hpp"
#include "wflow/wigner_series.hpp"

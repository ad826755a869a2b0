#pragma once

// Umbrella header: elastic decomposition of functional data into translation,
// amplitude, and phase components, metric boxplots per component, outlier
// detection, and the simulation benchmark harness.

#include "elastic/alignment.hpp"
#include "elastic/boxplots.hpp"
#include "elastic/csv.hpp"
#include "elastic/function_core.hpp"
#include "elastic/medians.hpp"
#include "elastic/numerics.hpp"
#include "elastic/parallel.hpp"
#include "elastic/report.hpp"
#include "elastic/simulation.hpp"
#include "elastic/svg.hpp"
#include "elastic/types.hpp"

#pragma once

// Umbrella header for the whole library.

#include "beliefdyn/adapter.hpp"
#include "beliefdyn/behavior.hpp"
#include "beliefdyn/engine.hpp"
#include "beliefdyn/experiments.hpp"
#include "beliefdyn/io.hpp"
#include "beliefdyn/metrics.hpp"
#include "beliefdyn/population.hpp"
#include "beliefdyn/report_io.hpp"
#include "beliefdyn/rng.hpp"
#include "beliefdyn/serde.hpp"
#include "beliefdyn/stance.hpp"
#include "beliefdyn/types.hpp"
#include "beliefdyn/validate.hpp"
#include "beliefdyn/version.hpp"

#pragma once

// Umbrella header for the whole library.

#include "gradopt/adalipo.hpp"
#include "gradopt/box.hpp"
#include "gradopt/config_io.hpp"
#include "gradopt/dataset.hpp"
#include "gradopt/epoch_schedule.hpp"
#include "gradopt/experiment.hpp"
#include "gradopt/folds.hpp"
#include "gradopt/gradopt.hpp"
#include "gradopt/krr.hpp"
#include "gradopt/metrics.hpp"
#include "gradopt/objective.hpp"
#include "gradopt/prs.hpp"
#include "gradopt/random.hpp"
#include "gradopt/results_table.hpp"
#include "gradopt/run_result.hpp"
#include "gradopt/sfogd.hpp"
#include "gradopt/synthetic.hpp"
#include "gradopt/two_point.hpp"

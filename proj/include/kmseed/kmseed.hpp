#pragma once

#include "kmseed/dataset.hpp"
#include "kmseed/errors.hpp"
#include "kmseed/experiment.hpp"
#include "kmseed/initializers.hpp"
#include "kmseed/lloyd.hpp"
#include "kmseed/matrix.hpp"
#include "kmseed/metrics.hpp"
#include "kmseed/oracle.hpp"
#include "kmseed/report.hpp"
#include "kmseed/rng.hpp"
#include "kmseed/version.hpp"

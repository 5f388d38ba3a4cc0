#pragma once

#include "skewlab/captivity.hpp"
#include "skewlab/cocycle.hpp"
#include "skewlab/cohomology.hpp"
#include "skewlab/correlations.hpp"
#include "skewlab/error.hpp"
#include "skewlab/escape.hpp"
#include "skewlab/experiment.hpp"
#include "skewlab/noise.hpp"
#include "skewlab/numeric.hpp"
#include "skewlab/parallel.hpp"
#include "skewlab/spectral.hpp"
#include "skewlab/system.hpp"
#include "skewlab/transfer.hpp"
#include "skewlab/trig.hpp"

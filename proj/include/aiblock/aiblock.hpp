#pragma once

#include "aiblock/competitors.hpp"
#include "aiblock/core.hpp"
#include "aiblock/eco.hpp"
#include "aiblock/errors.hpp"
#include "aiblock/estimators.hpp"
#include "aiblock/experiments.hpp"
#include "aiblock/io.hpp"
#include "aiblock/maxima.hpp"
#include "aiblock/parallel.hpp"
#include "aiblock/random.hpp"
#include "aiblock/simulate.hpp"

#pragma once

#include "cmvbeta/cmv.hpp"
#include "cmvbeta/distributions.hpp"
#include "cmvbeta/ensembles.hpp"
#include "cmvbeta/errors.hpp"
#include "cmvbeta/opuc.hpp"
#include "cmvbeta/polynomial.hpp"
#include "cmvbeta/rng.hpp"
#include "cmvbeta/stats.hpp"
#include "cmvbeta/szego_map.hpp"

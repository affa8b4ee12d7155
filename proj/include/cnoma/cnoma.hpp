#pragma once

#include "cnoma/channel.hpp"
#include "cnoma/config.hpp"
#include "cnoma/error.hpp"
#include "cnoma/experiments.hpp"
#include "cnoma/montecarlo.hpp"
#include "cnoma/params.hpp"
#include "cnoma/rng.hpp"
#include "cnoma/schemes.hpp"
#include "cnoma/sweep.hpp"

#pragma once

// Umbrella header: optimal secondary-user signaling (power and circularity)
// in an underlay cognitive-radio interference channel, with brute-force
// verifiers and a Rayleigh-fading Monte Carlo sweep driver.

#include "igs/model.hpp"
#include "igs/montecarlo.hpp"
#include "igs/oracle.hpp"
#include "igs/rates.hpp"
#include "igs/report.hpp"
#include "igs/solver.hpp"

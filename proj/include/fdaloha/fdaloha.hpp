#pragma once

// Umbrella header for the full-duplex Aloha game library.

#include "fdaloha/errors.hpp"
#include "fdaloha/game.hpp"
#include "fdaloha/linsys.hpp"
#include "fdaloha/model.hpp"
#include "fdaloha/montecarlo.hpp"
#include "fdaloha/poa.hpp"
#include "fdaloha/rng.hpp"
#include "fdaloha/scenario.hpp"
#include "fdaloha/throughput.hpp"
#include "fdaloha/verification.hpp"

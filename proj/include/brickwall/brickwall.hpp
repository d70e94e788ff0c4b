#pragma once

#include "brickwall/band_set.hpp"
#include "brickwall/config.hpp"
#include "brickwall/errors.hpp"
#include "brickwall/experiment.hpp"
#include "brickwall/fft.hpp"
#include "brickwall/field.hpp"
#include "brickwall/galois.hpp"
#include "brickwall/planner.hpp"
#include "brickwall/propagator.hpp"
#include "brickwall/sidon.hpp"
#include "brickwall/spectral.hpp"
#include "brickwall/threetone.hpp"
#include "brickwall/units.hpp"

#pragma once

// Extremal functions and best constants for discrete Sobolev and
// Riesz-potential inequalities on the integer lattice Z^N.

#include "box.hpp"
#include "cc.hpp"
#include "convolve.hpp"
#include "fft.hpp"
#include "function.hpp"
#include "grid_io.hpp"
#include "hls.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "probe.hpp"
#include "rng.hpp"
#include "sobolev.hpp"

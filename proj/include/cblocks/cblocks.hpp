#pragma once

#include "cblocks/cocycle.hpp"
#include "cblocks/fixtures.hpp"
#include "cblocks/gf2.hpp"
#include "cblocks/graph.hpp"
#include "cblocks/heisenberg.hpp"
#include "cblocks/json_io.hpp"
#include "cblocks/lattice.hpp"
#include "cblocks/verlinde.hpp"
#include "cblocks/weights.hpp"

#pragma once

// Umbrella header.

#include "renyi/coding.hpp"
#include "renyi/distribution.hpp"
#include "renyi/divergences.hpp"
#include "renyi/gmin.hpp"
#include "renyi/locus.hpp"
#include "renyi/numeric.hpp"

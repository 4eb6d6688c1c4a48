#pragma once

// Umbrella header for the universal stochastic covering library.

#include "ucover/common.hpp"
#include "ucover/cutting_plane.hpp"
#include "ucover/distribution.hpp"
#include "ucover/edgecover.hpp"
#include "ucover/elemset.hpp"
#include "ucover/facility.hpp"
#include "ucover/generators.hpp"
#include "ucover/instance.hpp"
#include "ucover/lp.hpp"
#include "ucover/multicut.hpp"
#include "ucover/setcover.hpp"
#include "ucover/submodular.hpp"
#include "ucover/verify.hpp"

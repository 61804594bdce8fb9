#pragma once

#include "lqnet/catalan.hpp"
#include "lqnet/errors.hpp"
#include "lqnet/oracle.hpp"
#include "lqnet/params.hpp"
#include "lqnet/riccati.hpp"
#include "lqnet/rng.hpp"
#include "lqnet/sim.hpp"
#include "lqnet/tree.hpp"
#include "lqnet/twosided.hpp"
#include "lqnet/verify.hpp"
#include "lqnet/version.hpp"

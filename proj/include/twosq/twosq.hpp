#pragma once

#include "twosq/core_arith.hpp"
#include "twosq/error.hpp"
#include "twosq/oracles.hpp"
#include "twosq/random_prime.hpp"
#include "twosq/squares.hpp"
#include "twosq/witness.hpp"

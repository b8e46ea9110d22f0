// Umbrella header.

#pragma once

#include "phlo/base.hpp"
#include "phlo/config.hpp"
#include "phlo/exterior.hpp"
#include "phlo/field.hpp"
#include "phlo/frobenius.hpp"
#include "phlo/jet.hpp"
#include "phlo/numerics.hpp"
#include "phlo/rng.hpp"
#include "phlo/solutions.hpp"
#include "phlo/strain.hpp"
#include "phlo/stress_energy.hpp"
#include "phlo/verify.hpp"

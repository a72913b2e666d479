#pragma once

#include "polylim/bernoulli.hpp"
#include "polylim/cot_oracle.hpp"
#include "polylim/cotderiv.hpp"
#include "polylim/errors.hpp"
#include "polylim/exact.hpp"
#include "polylim/limits.hpp"
#include "polylim/polygamma.hpp"

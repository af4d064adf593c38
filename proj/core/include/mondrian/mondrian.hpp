#pragma once

#include "mondrian/criterion.hpp"
#include "mondrian/divisor.hpp"
#include "mondrian/errors.hpp"
#include "mondrian/primes.hpp"
#include "mondrian/refined_count.hpp"
#include "mondrian/report.hpp"
#include "mondrian/rough_sieve.hpp"
#include "mondrian/tiling.hpp"

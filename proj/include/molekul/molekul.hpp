#pragma once

#include "molekul/atom_system.hpp"
#include "molekul/coin_search.hpp"
#include "molekul/error.hpp"
#include "molekul/integer.hpp"
#include "molekul/numerical_semigroup.hpp"
#include "molekul/prime_set.hpp"
#include "molekul/primary.hpp"
#include "molekul/primes.hpp"
#include "molekul/puiseux.hpp"
#include "molekul/rational.hpp"
#include "molekul/strip_chart.hpp"
#include "molekul/verify.hpp"

#pragma once

#include "kummer/bigreal.hpp"
#include "kummer/coeffs.hpp"
#include "kummer/error.hpp"
#include "kummer/expansion.hpp"
#include "kummer/mapping.hpp"
#include "kummer/oracle.hpp"
#include "kummer/regimes.hpp"
#include "kummer/scalar.hpp"

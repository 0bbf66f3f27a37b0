#pragma once

#include "clifford.hpp"
#include "combinatorics.hpp"
#include "construct.hpp"
#include "current.hpp"
#include "exterior.hpp"
#include "fieldcalc.hpp"
#include "gauge.hpp"
#include "index.hpp"
#include "parallel.hpp"
#include "spectral.hpp"
#include "tolerances.hpp"

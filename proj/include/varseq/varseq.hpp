#pragma once

#include "core.hpp"
#include "ensemble.hpp"
#include "exponents.hpp"
#include "spaces.hpp"
#include "operators.hpp"
#include "weights.hpp"
#include "rdf.hpp"
#include "report.hpp"
#include "harness.hpp"
#include "checks.hpp"
#include "io.hpp"
#include "suite.hpp"

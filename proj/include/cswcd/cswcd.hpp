#pragma once

#include "cswcd/errors.hpp"
#include "cswcd/series.hpp"
#include "cswcd/bergman.hpp"
#include "cswcd/lft.hpp"
#include "cswcd/symbols.hpp"
#include "cswcd/operator_matrix.hpp"
#include "cswcd/conjugation.hpp"
#include "cswcd/diagnostics.hpp"
#include "cswcd/random.hpp"
#include "cswcd/config.hpp"
#include "cswcd/runner.hpp"

#pragma once

#include "opalg/errors.hpp"
#include "opalg/symbols.hpp"
#include "opalg/coeff.hpp"
#include "opalg/terms.hpp"
#include "opalg/order.hpp"
#include "opalg/poly.hpp"
#include "opalg/parse.hpp"
#include "opalg/rewrite.hpp"
#include "opalg/theory.hpp"
#include "opalg/gsbases.hpp"
#include "opalg/models.hpp"
#include "opalg/random.hpp"
#include "opalg/json_io.hpp"

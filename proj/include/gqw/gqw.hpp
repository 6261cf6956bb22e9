#pragma once

// Umbrella header.

#include "gqw/definability.hpp"
#include "gqw/errors.hpp"
#include "gqw/eval.hpp"
#include "gqw/formula.hpp"
#include "gqw/io.hpp"
#include "gqw/model.hpp"
#include "gqw/parser.hpp"
#include "gqw/prenex.hpp"
#include "gqw/printer.hpp"
#include "gqw/quantifier.hpp"

#pragma once

#include "fillrec/errors.hpp"
#include "fillrec/poly.hpp"
#include "fillrec/shapes.hpp"
#include "fillrec/fillings.hpp"
#include "fillrec/parallel.hpp"
#include "fillrec/enumerate.hpp"
#include "fillrec/generators.hpp"
#include "fillrec/operators.hpp"
#include "fillrec/recurrence.hpp"
#include "fillrec/polytope.hpp"
#include "fillrec/json_io.hpp"
#include "fillrec/cli.hpp"

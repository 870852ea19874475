#pragma once

// Umbrella header.

#include "errors.hpp"
#include "expr.hpp"
#include "field.hpp"
#include "interval.hpp"
#include "limits.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "model_io.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "radical.hpp"
#include "rationalizer.hpp"
#include "simplex.hpp"

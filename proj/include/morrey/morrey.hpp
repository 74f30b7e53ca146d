#pragma once

// Umbrella header for the whole library.

#include "morrey/audits.hpp"
#include "morrey/criteria.hpp"
#include "morrey/cutoff.hpp"
#include "morrey/errors.hpp"
#include "morrey/field.hpp"
#include "morrey/functionals.hpp"
#include "morrey/generators.hpp"
#include "morrey/grid.hpp"
#include "morrey/operators.hpp"
#include "morrey/parallel.hpp"
#include "morrey/quadrature.hpp"
#include "morrey/reports.hpp"
#include "morrey/rescale.hpp"
#include "morrey/vec.hpp"
#include "morrey/vsf_io.hpp"

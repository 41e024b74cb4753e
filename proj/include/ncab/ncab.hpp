#pragma once

#include "ncab/bounds.hpp"
#include "ncab/calculus.hpp"
#include "ncab/dipole.hpp"
#include "ncab/errors.hpp"
#include "ncab/fields.hpp"
#include "ncab/nc_algebra.hpp"
#include "ncab/paths.hpp"
#include "ncab/phase.hpp"
#include "ncab/quadrature.hpp"
#include "ncab/scenario.hpp"
#include "ncab/units.hpp"
#include "ncab/vec3.hpp"

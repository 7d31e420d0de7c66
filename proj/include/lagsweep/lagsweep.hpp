#pragma once

#include "lagsweep/error.hpp"
#include "lagsweep/polynomial.hpp"
#include "lagsweep/symplectic.hpp"
#include "lagsweep/plane_curve.hpp"
#include "lagsweep/lagrangian.hpp"
#include "lagsweep/sweep.hpp"
#include "lagsweep/planar.hpp"
#include "lagsweep/billiard.hpp"
#include "lagsweep/io.hpp"
#include "lagsweep/version.hpp"

#pragma once

#include "levi/claims.hpp"
#include "levi/config.hpp"
#include "levi/dynamics.hpp"
#include "levi/error.hpp"
#include "levi/integrator.hpp"
#include "levi/model.hpp"
#include "levi/oracle.hpp"
#include "levi/physics.hpp"
#include "levi/report.hpp"
#include "levi/sweep.hpp"
#include "levi/units.hpp"

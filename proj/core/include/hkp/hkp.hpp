#pragma once

#include "hkp/bound_report.hpp"
#include "hkp/boundary.hpp"
#include "hkp/constructions.hpp"
#include "hkp/dirichlet.hpp"
#include "hkp/error.hpp"
#include "hkp/estimates.hpp"
#include "hkp/parallel.hpp"
#include "hkp/poisson.hpp"
#include "hkp/quadrature.hpp"

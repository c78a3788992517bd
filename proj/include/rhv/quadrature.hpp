#pragma once

#include "rhv/quadrature/gauss_legendre.hpp"
#include "rhv/quadrature/integrand.hpp"
#include "rhv/quadrature/integrate.hpp"
#include "rhv/quadrature/tail.hpp"

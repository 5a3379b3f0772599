#pragma once

// Convenience umbrella for the biangle library.

#include "biangle/special.hpp"
#include "biangle/jacobi.hpp"
#include "biangle/parallel.hpp"
#include "biangle/biangle_basis.hpp"
#include "biangle/quadrature.hpp"
#include "biangle/cesaro.hpp"
#include "biangle/product_formula.hpp"

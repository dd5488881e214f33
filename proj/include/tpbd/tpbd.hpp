#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "bigfloat.hpp"
#include "precision.hpp"
#include "matrix.hpp"
#include "nodes.hpp"
#include "neville.hpp"
#include "bidiagonal.hpp"
#include "bessel.hpp"
#include "dense_eigen.hpp"
#include "jacobi_svd.hpp"
#include "solvers.hpp"
#include "reference.hpp"
#include "experiments.hpp"

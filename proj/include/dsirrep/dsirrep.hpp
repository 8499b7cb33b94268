#pragma once

#include "backbone_solver.hpp"
#include "cmatrix.hpp"
#include "coupling.hpp"
#include "errors.hpp"
#include "half_int.hpp"
#include "hla_block.hpp"
#include "rational.hpp"
#include "rational_solve.hpp"
#include "representation.hpp"
#include "su2.hpp"
#include "triple.hpp"
#include "verifier.hpp"

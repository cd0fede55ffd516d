#pragma once

// Umbrella header: exact computation of the second invariant cohomology of
// finite-dimensional Hopf algebras through tensor structures on the identity
// functor of a (co)representation category, with independent group-algebra
// certification.

#include "brute.hpp"
#include "catalogue.hpp"
#include "cocycle.hpp"
#include "cyclotomic.hpp"
#include "fusion.hpp"
#include "group.hpp"
#include "intmatrix.hpp"
#include "io.hpp"
#include "literal.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "rep.hpp"
#include "solver.hpp"
#include "solver_classify.hpp"

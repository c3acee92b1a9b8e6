#pragma once

// Unified-transform solver for the modified Helmholtz equation in convex
// polygons: spectral functions, global-relation collocation for the
// Dirichlet-Neumann map with Legendre + Dirac boundary data, ray-integral
// interior evaluation, corner-singularity classification, and the
// half-strip reference solution.

#include "polyhelm/boundary_data.hpp"
#include "polyhelm/corner.hpp"
#include "polyhelm/errors.hpp"
#include "polyhelm/evaluator.hpp"
#include "polyhelm/geometry.hpp"
#include "polyhelm/global_relation.hpp"
#include "polyhelm/halfstrip.hpp"
#include "polyhelm/legendre.hpp"
#include "polyhelm/quadrature.hpp"
#include "polyhelm/regularity.hpp"
#include "polyhelm/serialization.hpp"
#include "polyhelm/spectral.hpp"

#pragma once

#include "k34h/intmatrix.hpp"

namespace k34h::gkz {

// Normalized lattice volume of the convex hull of a point configuration
// (points are the columns of the input, assumed to span an affine
// lattice of dimension rank-1). Exact placing triangulation.
long normalized_volume(const IntMatrix& points_cols);

}  // namespace k34h::gkz

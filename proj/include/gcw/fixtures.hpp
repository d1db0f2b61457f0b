#pragma once

#include "gcw/complex.hpp"

namespace gcw {

/// Full square with the left-right mirror action: orbits (2,3,1).
EquivariantComplex make_square();

/// The n-simplex with the natural permutation action of S_{n+1}; one orbit
/// per dimension. n >= 1.
EquivariantComplex make_simplex(int n);

enum class ModularTreeVariant { T1, T2 };

/// Cell structures on the modular tree for PSL_2(Z) (projective 2x2 integer
/// matrices). T1: strict fundamental domain, vertex stabilizers C2 and C3,
/// free edge. T2: one C3 vertex orbit and the double-length edge with setwise
/// stabilizer C2 flipping it.
EquivariantComplex make_modular_tree(ModularTreeVariant variant);

/// Boundary of the n-gon with the dihedral action: one vertex orbit and one
/// edge orbit, both with C2 stabilizers; the edge is flipped. n >= 3.
EquivariantComplex make_polygon(int n);

}  // namespace gcw

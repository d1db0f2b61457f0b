#pragma once

#include <string>
#include <vector>

#include "gcw/complex.hpp"
#include "gcw/subdivide.hpp"

namespace gcw {

/// Table-style block: "dim:" header followed by "orbits:" and "cells:" rows
/// of space-separated integers.
std::string counts_report(const std::vector<std::size_t>& orbits,
                          const std::vector<std::size_t>& cells);

std::vector<std::size_t> orbit_counts(const EquivariantComplex& x);

/// The `info` command payload: counts block plus the rigidity summary.
std::string info_report(const EquivariantComplex& x);

/// The `subdivide`/`bench` row set for one method.
std::string method_report(SubdivisionMethod method, const SubdivisionResult& result);

}  // namespace gcw

#pragma once

#include <string>

#include "gcw/complex.hpp"

namespace gcw {

/// gcw-1 file format: a single JSON document with top-level fields
///   format: "gcw-1"
///   group:  {kind: "matrix"|"permutation", degree: int, projective: bool}
///   cells:  [[orbit...], [orbit...], ...] indexed by dimension
/// Each orbit: {label?, stabilizer_gens: [elt...],
///              boundary: [{orbit, elt, incidence}...]}.
/// Elements are flat integer arrays: row-major matrix entries or a 0-based
/// permutation image sequence. Unknown top-level fields are rejected with a
/// warning listing them.

EquivariantComplex load_complex(const std::string& path, Bounds bounds = {});
EquivariantComplex parse_complex(const std::string& text, Bounds bounds = {});

void save_complex(const EquivariantComplex& x, const std::string& path);
std::string dump_complex(const EquivariantComplex& x);

}  // namespace gcw

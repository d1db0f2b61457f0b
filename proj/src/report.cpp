#include "gcw/report.hpp"

#include <sstream>

namespace gcw {

std::string counts_report(const std::vector<std::size_t>& orbits,
                          const std::vector<std::size_t>& cells) {
  std::ostringstream os;
  os << "dim:";
  for (std::size_t d = 0; d < std::max(orbits.size(), cells.size()); ++d) os << " " << d;
  os << "\norbits:";
  for (std::size_t v : orbits) os << " " << v;
  os << "\ncells:";
  for (std::size_t v : cells) os << " " << v;
  os << "\n";
  return os.str();
}

std::vector<std::size_t> orbit_counts(const EquivariantComplex& x) {
  std::vector<std::size_t> out;
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    out.push_back(static_cast<std::size_t>(x.orbit_count(dim)));
  }
  return out;
}

std::string info_report(const EquivariantComplex& x) {
  std::ostringstream os;
  os << counts_report(orbit_counts(x), cell_counts(x));
  RigidityReport rig = is_rigid(x);
  if (rig.rigid) {
    os << "rigid: yes\n";
  } else {
    os << "rigid: no (" << rig.offenders.size() << " offenders)\n";
    for (const RigidityOffender& o : rig.offenders) {
      os << "offender: " << x.orbit_name(o.dim, o.orbit) << " witness " << o.witness.to_string()
         << "\n";
    }
  }
  return os.str();
}

std::string method_report(SubdivisionMethod method, const SubdivisionResult& result) {
  std::ostringstream os;
  os << "method: " << method_name(method) << "\n";
  os << counts_report(orbit_counts(result.complex), result.tracked_cell_counts);
  return os.str();
}

}  // namespace gcw

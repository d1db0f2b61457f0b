#include "gcw/gcw_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gcw/errors.hpp"

namespace gcw {

namespace {

using nlohmann::json;

GroupElement element_from_json(const json& j, const GroupDescriptor& gd,
                               const std::string& where) {
  if (!j.is_array()) throw InputError("element at " + where + " must be an integer array");
  std::vector<long long> data;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw InputError("element at " + where + " has a non-integer entry");
    }
    data.push_back(v.get<long long>());
  }
  if (gd.kind == ElementKind::Matrix) {
    if (data.size() != static_cast<std::size_t>(gd.degree) * gd.degree) {
      throw InputError("element at " + where + " has wrong length for a " +
                       std::to_string(gd.degree) + "x" + std::to_string(gd.degree) + " matrix");
    }
    return GroupElement::matrix(gd.degree, std::move(data), gd.projective);
  }
  if (data.size() != static_cast<std::size_t>(gd.degree)) {
    throw InputError("element at " + where + " has wrong length for a degree-" +
                     std::to_string(gd.degree) + " permutation");
  }
  return GroupElement::permutation(std::move(data));
}

json element_to_json(const GroupElement& g) {
  return json(g.data());
}

}  // namespace

EquivariantComplex parse_complex(const std::string& text, Bounds bounds) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed gcw-1 document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("gcw-1 document must be a JSON object");

  static const std::set<std::string> known{"format", "group", "cells"};
  std::string unknown;
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) {
    throw InputError("warning: unknown top-level fields rejected: " + unknown);
  }
  if (!doc.contains("format") || doc["format"] != "gcw-1") {
    throw InputError("missing or unsupported format field (expected \"gcw-1\")");
  }
  if (!doc.contains("group") || !doc["group"].is_object()) {
    throw InputError("missing group descriptor");
  }
  const json& jg = doc["group"];
  GroupDescriptor gd;
  std::string kind = jg.value("kind", "");
  if (kind == "matrix") {
    gd.kind = ElementKind::Matrix;
  } else if (kind == "permutation") {
    gd.kind = ElementKind::Permutation;
  } else {
    throw InputError("group.kind must be \"matrix\" or \"permutation\"");
  }
  if (!jg.contains("degree") || !jg["degree"].is_number_integer()) {
    throw InputError("group.degree must be an integer");
  }
  gd.degree = jg["degree"].get<int>();
  if (gd.degree <= 0) throw InputError("group.degree must be positive");
  gd.projective = jg.value("projective", false);
  if (gd.projective && gd.kind != ElementKind::Matrix) {
    throw InputError("projective groups must use the matrix kind");
  }

  if (!doc.contains("cells") || !doc["cells"].is_array()) {
    throw InputError("cells must be an array of per-dimension orbit lists");
  }
  std::vector<std::vector<OrbitCell>> cells;
  int dim = 0;
  for (const json& jdim : doc["cells"]) {
    if (!jdim.is_array()) throw InputError("cells[" + std::to_string(dim) + "] must be an array");
    std::vector<OrbitCell> orbits;
    int idx = 0;
    for (const json& jorb : jdim) {
      std::string where = "dim " + std::to_string(dim) + " orbit " + std::to_string(idx);
      if (!jorb.is_object()) throw InputError(where + " must be an object");
      OrbitCell cell;
      cell.label = jorb.value("label", "");
      if (jorb.contains("stabilizer_gens")) {
        int gi = 0;
        for (const json& jel : jorb["stabilizer_gens"]) {
          cell.stabilizer_gens.push_back(
              element_from_json(jel, gd, where + " generator " + std::to_string(gi++)));
        }
      }
      if (jorb.contains("boundary")) {
        int bi = 0;
        for (const json& jref : jorb["boundary"]) {
          std::string rwhere = where + " boundary " + std::to_string(bi++);
          if (!jref.is_object() || !jref.contains("orbit") || !jref.contains("elt") ||
              !jref.contains("incidence")) {
            throw InputError(rwhere + " needs orbit, elt and incidence fields");
          }
          FaceRef ref{jref["orbit"].get<int>(), element_from_json(jref["elt"], gd, rwhere),
                      jref["incidence"].get<long long>()};
          cell.boundary.push_back(std::move(ref));
        }
      }
      orbits.push_back(std::move(cell));
      ++idx;
    }
    cells.push_back(std::move(orbits));
    ++dim;
  }
  try {
    return EquivariantComplex(gd, std::move(cells), bounds);
  } catch (const ResourceError& e) {
    // a stabilizer that fails to close is an input defect of the document
    throw InputError(std::string("non-finite stabilizer in gcw-1 document: ") + e.what());
  }
}

EquivariantComplex load_complex(const std::string& path, Bounds bounds) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_complex(buf.str(), bounds);
}

std::string dump_complex(const EquivariantComplex& x) {
  json doc;
  doc["format"] = "gcw-1";
  doc["group"] = {
      {"kind", x.group().kind == ElementKind::Matrix ? "matrix" : "permutation"},
      {"degree", x.group().degree},
      {"projective", x.group().projective},
  };
  json jcells = json::array();
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    json jdim = json::array();
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      const OrbitCell& cell = x.orbit(dim, idx);
      json jorb;
      if (!cell.label.empty()) jorb["label"] = cell.label;
      json gens = json::array();
      for (const GroupElement& g : cell.stabilizer_gens) gens.push_back(element_to_json(g));
      jorb["stabilizer_gens"] = std::move(gens);
      json boundary = json::array();
      for (const FaceRef& ref : cell.boundary) {
        boundary.push_back({{"orbit", ref.orbit},
                            {"elt", element_to_json(ref.elt)},
                            {"incidence", ref.incidence}});
      }
      jorb["boundary"] = std::move(boundary);
      jdim.push_back(std::move(jorb));
    }
    jcells.push_back(std::move(jdim));
  }
  doc["cells"] = std::move(jcells);
  return doc.dump(1);
}

void save_complex(const EquivariantComplex& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << dump_complex(x) << "\n";
}

}  // namespace gcw

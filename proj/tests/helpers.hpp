// Shared test fixtures beyond the built-ins.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "gcw/complex.hpp"

namespace gcw_test {

/// The solid cube [0,2]^3 with the mirror x -> 2-x: a 3-cell whose stabilizer
/// flips it, with facet orbits of mixed kinds (a swapped pair and four
/// setwise-fixed mirrored faces). Exercises the multi-facet fundamental-domain
/// accumulation in dimension 3.
inline gcw::EquivariantComplex make_mirrored_cube() {
  using namespace gcw;
  GroupDescriptor gd{ElementKind::Permutation, 2, false};
  GroupElement e = gd.identity();
  GroupElement m = GroupElement::permutation({1, 0});

  struct Cube {
    int a, b, c;  // 0, 1, 2 per axis; 1 means the full interval
    int dim() const { return (a == 1) + (b == 1) + (c == 1); }
    Cube mirrored() const { return {a == 1 ? 1 : 2 - a, b, c}; }
    auto operator<=>(const Cube&) const = default;
  };
  std::vector<Cube> cells;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) cells.push_back({a, b, c});
    }
  }
  std::map<Cube, std::pair<Cube, GroupElement>> rep_of;
  std::vector<std::vector<Cube>> reps(4);
  for (const Cube& cell : cells) {
    Cube image = cell.mirrored();
    Cube rep = std::min(cell, image);
    rep_of.insert_or_assign(cell, std::pair<Cube, GroupElement>{rep, cell == rep ? e : m});
    if (cell == rep) reps[cell.dim()].push_back(cell);
  }
  std::map<Cube, std::pair<int, int>> index;
  for (int d = 0; d <= 3; ++d) {
    for (std::size_t i = 0; i < reps[d].size(); ++i) {
      index[reps[d][i]] = {d, static_cast<int>(i)};
    }
  }
  // boundary of a product cell by the Leibniz rule: the axis contribution
  // carries sign (-1)^(number of interval axes before it), d[0,2] = {2} - {0}
  auto boundary = [&](const Cube& cell) {
    std::vector<std::pair<Cube, long long>> out;
    int intervals_before = 0;
    for (int axis = 0; axis < 3; ++axis) {
      int value = axis == 0 ? cell.a : axis == 1 ? cell.b : cell.c;
      if (value != 1) continue;
      long long sign = (intervals_before % 2 == 0) ? 1 : -1;
      Cube hi = cell, lo = cell;
      (axis == 0 ? hi.a : axis == 1 ? hi.b : hi.c) = 2;
      (axis == 0 ? lo.a : axis == 1 ? lo.b : lo.c) = 0;
      out.push_back({hi, sign});
      out.push_back({lo, -sign});
      ++intervals_before;
    }
    return out;
  };
  std::vector<std::vector<OrbitCell>> orbit_cells(4);
  for (int d = 0; d <= 3; ++d) {
    for (const Cube& rep : reps[d]) {
      OrbitCell oc;
      oc.label = std::to_string(rep.a) + std::to_string(rep.b) + std::to_string(rep.c);
      if (rep.mirrored() == rep) oc.stabilizer_gens = {m};
      for (const auto& [face, inc] : boundary(rep)) {
        auto [frep, gamma] = rep_of.at(face);
        oc.boundary.push_back({index.at(frep).second, gamma, inc});
      }
      orbit_cells[d].push_back(std::move(oc));
    }
  }
  return EquivariantComplex(gd, std::move(orbit_cells));
}

/// The cube [-1,1]^3 under its full symmetry group (signed permutation
/// matrices, order 48): one orbit per dimension, stabilizers of orders
/// 6, 4, 8 and 48. A rigid subdivision is a model of the classifying space
/// for proper actions of the (finite) group.
inline gcw::EquivariantComplex make_octahedral_cube() {
  using namespace gcw;
  GroupDescriptor gd{ElementKind::Matrix, 3, false};
  auto mat = [](std::vector<long long> v) {
    return GroupElement::matrix(3, std::move(v), false);
  };
  std::vector<GroupElement> gens{
      mat({0, 1, 0, 1, 0, 0, 0, 0, 1}),    // swap x,y
      mat({1, 0, 0, 0, 0, 1, 0, 1, 0}),    // swap y,z
      mat({-1, 0, 0, 0, 1, 0, 0, 0, 1}),   // flip x
  };
  GroupTablePtr full = FiniteGroupTable::generate(gens, ElementKind::Matrix, 3, false);

  using Cell = std::array<int, 3>;  // per axis: 0 = {-1}, 1 = [-1,1], 2 = {+1}
  auto dim_of = [](const Cell& c) { return (c[0] == 1) + (c[1] == 1) + (c[2] == 1); };
  auto act = [](const GroupElement& g, const Cell& c) {
    Cell out{};
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        long long entry = g.data()[j * 3 + i];
        if (entry == 0) continue;
        out[j] = (entry == 1) ? c[i] : 2 - c[i];
      }
    }
    return out;
  };
  std::vector<Cell> cells;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) cells.push_back({a, b, c});
    }
  }
  auto orbit_rep = [&](const Cell& c) {
    Cell best = c;
    for (const GroupElement& g : full->elements()) best = std::min(best, act(g, c));
    return best;
  };
  auto mapping_elt = [&](const Cell& rep, const Cell& target) {
    for (const GroupElement& g : full->elements()) {
      if (act(g, rep) == target) return g;
    }
    throw InternalError("octahedral cube: cells not in one orbit");
  };
  std::vector<std::vector<Cell>> reps(4);
  std::map<Cell, std::pair<int, int>> index;
  for (const Cell& c : cells) {
    if (orbit_rep(c) != c) continue;
    index[c] = {dim_of(c), static_cast<int>(reps[dim_of(c)].size())};
    reps[dim_of(c)].push_back(c);
  }
  auto boundary = [&](const Cell& cell) {
    std::vector<std::pair<Cell, long long>> out;
    int intervals_before = 0;
    for (int axis = 0; axis < 3; ++axis) {
      if (cell[axis] != 1) continue;
      long long sign = (intervals_before % 2 == 0) ? 1 : -1;
      Cell hi = cell, lo = cell;
      hi[axis] = 2;
      lo[axis] = 0;
      out.push_back({hi, sign});
      out.push_back({lo, -sign});
      ++intervals_before;
    }
    return out;
  };
  const char* names[4] = {"v", "e", "f", "c"};
  std::vector<std::vector<OrbitCell>> orbit_cells(4);
  for (int d = 0; d <= 3; ++d) {
    for (const Cell& rep : reps[d]) {
      OrbitCell oc;
      oc.label = names[d];
      for (const GroupElement& g : full->elements()) {
        if (act(g, rep) == rep) oc.stabilizer_gens.push_back(g);
      }
      for (const auto& [face, inc] : boundary(rep)) {
        Cell frep = orbit_rep(face);
        oc.boundary.push_back({index.at(frep).second, mapping_elt(frep, face), inc});
      }
      orbit_cells[d].push_back(std::move(oc));
    }
  }
  return EquivariantComplex(gd, std::move(orbit_cells));
}

}  // namespace gcw_test

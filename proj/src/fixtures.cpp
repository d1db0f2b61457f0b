#include "gcw/fixtures.hpp"

#include <numeric>

#include "gcw/errors.hpp"

namespace gcw {

namespace {

GroupElement perm(std::vector<long long> images) {
  return GroupElement::permutation(std::move(images));
}

}  // namespace

EquivariantComplex make_square() {
  GroupDescriptor gd{ElementKind::Permutation, 2, false};
  GroupElement e = gd.identity();
  GroupElement m = perm({1, 0});

  std::vector<std::vector<OrbitCell>> cells(3);
  // vertices: top corner pair, bottom corner pair (free orbits)
  cells[0].push_back({{}, nullptr, {}, "corner-top"});
  cells[0].push_back({{}, nullptr, {}, "corner-bottom"});
  // edges: left/right pair (free), top (mirrored), bottom (mirrored)
  cells[1].push_back({{}, nullptr, {{0, e, 1}, {1, e, -1}}, "side"});
  cells[1].push_back({{m}, nullptr, {{0, m, 1}, {0, e, -1}}, "top"});
  cells[1].push_back({{m}, nullptr, {{1, m, 1}, {1, e, -1}}, "bottom"});
  // the 2-cell, counterclockwise: bottom + right - top - left
  cells[2].push_back({{m}, nullptr, {{2, e, 1}, {0, m, 1}, {1, e, -1}, {0, e, -1}}, "face"});
  return EquivariantComplex(gd, std::move(cells));
}

EquivariantComplex make_simplex(int n) {
  if (n < 1) throw InputError("make_simplex requires n >= 1");
  const int d = n + 1;
  GroupDescriptor gd{ElementKind::Permutation, d, false};

  std::vector<std::vector<OrbitCell>> cells(n + 1);
  for (int m = 0; m <= n; ++m) {
    // representative cell: the face spanned by {0, ..., m}; setwise stabilizer
    // S_{0..m} x S_{m+1..n}
    std::vector<GroupElement> gens;
    for (int i = 0; i + 1 <= m; ++i) {
      std::vector<long long> img(d);
      std::iota(img.begin(), img.end(), 0);
      std::swap(img[i], img[i + 1]);
      gens.push_back(perm(img));
    }
    for (int i = m + 1; i + 1 <= n; ++i) {
      std::vector<long long> img(d);
      std::iota(img.begin(), img.end(), 0);
      std::swap(img[i], img[i + 1]);
      gens.push_back(perm(img));
    }
    std::vector<FaceRef> boundary;
    if (m > 0) {
      for (int i = 0; i <= m; ++i) {
        // cycle (i, i+1, ..., m) maps {0..m-1} onto {0..m} \ {i} preserving order
        std::vector<long long> img(d);
        std::iota(img.begin(), img.end(), 0);
        for (int j = i; j < m; ++j) img[j] = j + 1;
        img[m] = i;
        boundary.push_back({0, perm(img), (i % 2 == 0) ? 1 : -1});
      }
    }
    cells[m].push_back({std::move(gens), nullptr, std::move(boundary),
                        "face" + std::to_string(m)});
  }
  return EquivariantComplex(gd, std::move(cells));
}

EquivariantComplex make_modular_tree(ModularTreeVariant variant) {
  GroupDescriptor gd{ElementKind::Matrix, 2, true};
  GroupElement id = gd.identity();
  GroupElement s = GroupElement::matrix(2, {0, -1, 1, 0}, true);   // order 2 in PSL2(Z)
  GroupElement u = GroupElement::matrix(2, {0, -1, 1, -1}, true);  // order 3

  std::vector<std::vector<OrbitCell>> cells(2);
  if (variant == ModularTreeVariant::T1) {
    cells[0].push_back({{s}, nullptr, {}, "v2"});
    cells[0].push_back({{u}, nullptr, {}, "v3"});
    cells[1].push_back({{}, nullptr, {{0, id, 1}, {1, id, -1}}, "edge"});
  } else {
    cells[0].push_back({{u}, nullptr, {}, "v3"});
    cells[1].push_back({{s}, nullptr, {{0, s, 1}, {0, id, -1}}, "double-edge"});
  }
  return EquivariantComplex(gd, std::move(cells));
}

EquivariantComplex make_polygon(int n) {
  if (n < 3) throw InputError("make_polygon requires n >= 3");
  GroupDescriptor gd{ElementKind::Permutation, n, false};
  std::vector<long long> rot(n), refl(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  GroupElement r = perm(rot);
  GroupElement f = perm(refl);       // fixes vertex 0
  GroupElement edge_flip = r * f;    // i -> 1 - i, swaps 0 and 1

  std::vector<std::vector<OrbitCell>> cells(2);
  cells[0].push_back({{f}, nullptr, {}, "vertex"});
  cells[1].push_back({{edge_flip}, nullptr, {{0, r, 1}, {0, gd.identity(), -1}}, "edge"});
  return EquivariantComplex(gd, std::move(cells));
}

}  // namespace gcw

#pragma once

#include <string>
#include <vector>

#include "lab/discrepancy.hpp"

namespace lab::disc {

/// A finite group as a multiplication table over elements 0..n-1 in a fixed
/// canonical order (element 0 is the identity).
struct GroupTable {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> product;  // product[g][h] = g*h

  int identity() const { return 0; }
};

/// Parses specs of the form "cyclic:m", "dihedral:m", "symmetric:m", and
/// direct products joined by 'x', e.g. "cyclic:2xcyclic:3". Element order is
/// lexicographic on a canonical normal form per factor, so the matrices are
/// reproducible across runs. Throws on unsupported specs.
GroupTable make_group(const std::string& spec);

/// Permutation matrices of left multiplication h -> g*h, one per group
/// element, in element order.
std::vector<IntMatrix> regular_representation(const GroupTable& group);

}  // namespace lab::disc

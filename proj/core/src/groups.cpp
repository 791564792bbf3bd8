#include "lab/groups.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lab::disc {
namespace {

GroupTable make_cyclic(int m) {
  if (m < 1) throw std::invalid_argument("cyclic: order must be >= 1");
  GroupTable g;
  g.name = "cyclic:" + std::to_string(m);
  g.order = m;
  g.product.assign(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g.product[a][b] = (a + b) % m;
  return g;
}

// Element (i, j) is the normal-form word r^i s^j; index j*m + i, so the
// identity (0, 0) comes first and order is reproducible.
GroupTable make_dihedral(int m) {
  if (m < 1) throw std::invalid_argument("dihedral: order parameter must be >= 1");
  GroupTable g;
  g.name = "dihedral:" + std::to_string(m);
  g.order = 2 * m;
  g.product.assign(g.order, std::vector<int>(g.order));
  auto index = [m](int i, int j) { return j * m + i; };
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // s r^i = r^{-i} s, so r^{i1} s^{j1} r^{i2} s^{j2}
          // = r^{i1 + (-1)^{j1} i2} s^{j1 xor j2}.
          const int i = ((i1 + (j1 ? m - i2 : i2)) % m + m) % m;
          const int j = j1 ^ j2;
          g.product[index(i1, j1)][index(i2, j2)] = index(i, j);
        }
  return g;
}

GroupTable make_symmetric(int m) {
  if (m < 1 || m > 7)
    throw std::invalid_argument("symmetric: order parameter must be in [1, 7]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));  // lex order, id first

  GroupTable g;
  g.name = "symmetric:" + std::to_string(m);
  g.order = static_cast<int>(perms.size());
  g.product.assign(g.order, std::vector<int>(g.order));
  auto find = [&perms](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) -
                            perms.begin());
  };
  std::vector<int> composed(m);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      for (int x = 0; x < m; ++x) composed[x] = perms[a][perms[b][x]];
      g.product[a][b] = find(composed);
    }
  return g;
}

GroupTable direct_product(const GroupTable& g1, const GroupTable& g2) {
  GroupTable g;
  g.name = g1.name + "x" + g2.name;
  g.order = g1.order * g2.order;
  if (g.order > 5040) throw std::invalid_argument("direct_product: group too large");
  g.product.assign(g.order, std::vector<int>(g.order));
  auto index = [&g2](int a, int b) { return a * g2.order + b; };
  for (int a1 = 0; a1 < g1.order; ++a1)
    for (int b1 = 0; b1 < g2.order; ++b1)
      for (int a2 = 0; a2 < g1.order; ++a2)
        for (int b2 = 0; b2 < g2.order; ++b2)
          g.product[index(a1, b1)][index(a2, b2)] =
              index(g1.product[a1][a2], g2.product[b1][b2]);
  return g;
}

GroupTable make_factor(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("make_group: expected name:m, got '" + spec + "'");
  const std::string name = spec.substr(0, colon);
  const int m = std::stoi(spec.substr(colon + 1));
  if (name == "cyclic") return make_cyclic(m);
  if (name == "dihedral") return make_dihedral(m);
  if (name == "symmetric") return make_symmetric(m);
  throw std::invalid_argument("make_group: unsupported group '" + name + "'");
}

}  // namespace

GroupTable make_group(const std::string& spec) {
  std::vector<std::string> factors;
  std::size_t start = 0;
  while (true) {
    const auto pos = spec.find('x', start);
    if (pos == std::string::npos) {
      factors.push_back(spec.substr(start));
      break;
    }
    factors.push_back(spec.substr(start, pos - start));
    start = pos + 1;
  }
  if (factors.empty()) throw std::invalid_argument("make_group: empty spec");
  GroupTable g = make_factor(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i)
    g = direct_product(g, make_factor(factors[i]));
  return g;
}

std::vector<IntMatrix> regular_representation(const GroupTable& group) {
  std::vector<IntMatrix> mats;
  mats.reserve(group.order);
  for (int g = 0; g < group.order; ++g) {
    IntMatrix p = IntMatrix::Zero(group.order, group.order);
    for (int h = 0; h < group.order; ++h) p(group.product[g][h], h) = 1;
    mats.push_back(std::move(p));
  }
  return mats;
}

}  // namespace lab::disc

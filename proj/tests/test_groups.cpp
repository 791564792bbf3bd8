#include <set>

#include "doctest.h"
#include "lab/groups.hpp"

using namespace lab;
using namespace lab::disc;

namespace {

bool is_group(const GroupTable& g) {
  const int n = g.order;
  if (static_cast<int>(g.product.size()) != n) return false;
  // Identity.
  for (int h = 0; h < n; ++h)
    if (g.product[0][h] != h || g.product[h][0] != h) return false;
  // Latin square (cancellation).
  for (int a = 0; a < n; ++a) {
    std::set<int> row(g.product[a].begin(), g.product[a].end());
    if (static_cast<int>(row.size()) != n) return false;
  }
  // Associativity.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.product[g.product[a][b]][c] != g.product[a][g.product[b][c]])
          return false;
  return true;
}

bool is_abelian(const GroupTable& g) {
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      if (g.product[a][b] != g.product[b][a]) return false;
  return true;
}

}  // namespace

TEST_CASE("cyclic groups are valid abelian groups") {
  for (int m = 1; m <= 8; ++m) {
    const GroupTable g = make_group("cyclic:" + std::to_string(m));
    CHECK(g.order == m);
    CHECK(is_group(g));
    CHECK(is_abelian(g));
  }
}

TEST_CASE("cyclic:4 is addition mod 4") {
  const GroupTable g = make_group("cyclic:4");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(g.product[a][b] == (a + b) % 4);
}

TEST_CASE("dihedral groups are valid and nonabelian for m >= 3") {
  for (int m = 3; m <= 6; ++m) {
    const GroupTable g = make_group("dihedral:" + std::to_string(m));
    CHECK(g.order == 2 * m);
    CHECK(is_group(g));
    CHECK(!is_abelian(g));
  }
}

TEST_CASE("dihedral relation s r s = r^{-1}") {
  const int m = 5;
  const GroupTable g = make_group("dihedral:5");
  const int r = 1;      // rotation generator, index j*m+i with j=0, i=1
  const int s = m;      // reflection, j=1, i=0
  const int srs = g.product[g.product[s][r]][s];
  const int r_inv = m - 1;
  CHECK(srs == r_inv);
}

TEST_CASE("symmetric groups are valid with order m!") {
  const GroupTable s3 = make_group("symmetric:3");
  CHECK(s3.order == 6);
  CHECK(is_group(s3));
  CHECK(!is_abelian(s3));
  const GroupTable s4 = make_group("symmetric:4");
  CHECK(s4.order == 24);
  CHECK(is_group(s4));
}

TEST_CASE("direct products multiply componentwise") {
  const GroupTable g = make_group("cyclic:2xcyclic:3");
  CHECK(g.order == 6);
  CHECK(is_group(g));
  CHECK(is_abelian(g));
  // Z_2 x Z_3 is cyclic of order 6: some element has order 6.
  bool found = false;
  for (int a = 1; a < 6; ++a) {
    int x = a, ord = 1;
    while (x != 0) {
      x = g.product[x][a];
      ++ord;
    }
    if (ord == 6) found = true;
  }
  CHECK(found);
}

TEST_CASE("triple products parse") {
  const GroupTable g = make_group("cyclic:2xcyclic:2xcyclic:2");
  CHECK(g.order == 8);
  CHECK(is_group(g));
  for (int a = 0; a < 8; ++a) CHECK(g.product[a][a] == 0);  // exponent 2
}

TEST_CASE("unsupported specs throw") {
  CHECK_THROWS(make_group("quaternion:8"));
  CHECK_THROWS(make_group("cyclic:0"));
  CHECK_THROWS(make_group("cyclic:abc"));
  CHECK_THROWS(make_group(""));
  CHECK_THROWS(make_group("symmetric:8"));  // order cap
}

TEST_CASE("regular representation is a faithful permutation homomorphism") {
  const GroupTable g = make_group("dihedral:4");
  const std::vector<IntMatrix> rep = regular_representation(g);
  REQUIRE(static_cast<int>(rep.size()) == g.order);
  const int n = g.order;

  for (const IntMatrix& p : rep) {
    // Permutation matrix: one 1 per row and per column.
    for (int i = 0; i < n; ++i) {
      CHECK(p.row(i).sum() == 1);
      CHECK(p.col(i).sum() == 1);
    }
  }
  CHECK(rep[0] == IntMatrix(IntMatrix::Identity(n, n)));

  // Homomorphism: P_a P_b = P_{ab}.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      CHECK(IntMatrix(rep[a] * rep[b]) == rep[g.product[a][b]]);

  // Faithful: distinct elements give distinct matrices.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) CHECK(rep[a] != rep[b]);
}

TEST_CASE("regular representation encodes left multiplication") {
  const GroupTable g = make_group("cyclic:5");
  const std::vector<IntMatrix> rep = regular_representation(g);
  for (int a = 0; a < 5; ++a)
    for (int h = 0; h < 5; ++h) CHECK(rep[a](g.product[a][h], h) == 1);
}

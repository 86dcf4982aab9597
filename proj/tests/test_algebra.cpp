#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace qcoc;

namespace {

bool brute_is_quandle(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (int a = 0; a < n; ++a)
    if (t[a][a] != a) return false;
  for (int b = 0; b < n; ++b) {
    std::vector<int> seen(n, 0);
    for (int a = 0; a < n; ++a) ++seen[t[a][b]];
    for (int s : seen)
      if (s != 1) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[t[a][c]][t[b][c]]) return false;
  return true;
}

std::size_t brute_hom_count(const Quandle& x, const Quandle& y) {
  std::size_t count = 0;
  for (auto& f : oracle::all_tuples(y.order(), x.order())) {
    bool ok = true;
    for (int a = 0; a < x.order() && ok; ++a)
      for (int b = 0; b < x.order() && ok; ++b) ok = f[x.op(a, b)] == y.op(f[a], f[b]);
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("finite abelian group arithmetic", "[algebra]") {
  auto g = FiniteAbelianGroup::parse("2,4");
  CHECK(g.order() == 8);
  CHECK(g.rank() == 2);
  CHECK_FALSE(g.is_cyclic());
  CHECK(g.exponent() == 4);
  for (int a = 0; a < g.order(); ++a) {
    CHECK(g.encode(g.decode(a)) == a);
    CHECK(g.add(a, g.neg(a)) == 0);
    CHECK(g.sub(a, a) == 0);
    CHECK(g.scale(a, 4) == 0);
    for (int b = 0; b < g.order(); ++b) CHECK(g.add(a, b) == g.add(b, a));
  }
  CHECK(FiniteAbelianGroup::cyclic(3).to_string() == "Z_3");
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("2,x"), ParseError);
}

TEST_CASE("group ring values print with ascending exponents", "[algebra]") {
  GroupRingElement v(FiniteAbelianGroup::cyclic(3));
  v.add(0, 9);
  v.add(2, 18);
  CHECK(groupring_format(v) == "9 + 18t^2");
  CHECK(v.total() == 27);
  CHECK(v.negated().coefficient(1) == 18);
  GroupRingElement w(FiniteAbelianGroup::cyclic(3));
  w.add(1, 18);
  w.add(0, 9);
  CHECK(groupring_format(w) == "9 + 18t");
  GroupRingElement z(FiniteAbelianGroup::cyclic(3));
  z.add(0, 27);
  CHECK(groupring_format(z) == "27");
}

TEST_CASE("built-in quandle families satisfy the axioms", "[algebra]") {
  std::vector<Quandle> qs = {trivial_quandle(1), trivial_quandle(4), dihedral_quandle(3), dihedral_quandle(5),
                             dihedral_quandle(6), alexander_quandle(2, {1, 1, 1}), alexander_quandle(5, {-2, 1}),
                             conjugation_quandle(quaternion_group_table())};
  for (const auto& q : qs) {
    CAPTURE(q.label());
    CHECK(brute_is_quandle(q.table()));
    CHECK(check_quandle(q.table()).valid());
    for (int a = 0; a < q.order(); ++a)
      for (int b = 0; b < q.order(); ++b) CHECK(q.op(q.rdiv(a, b), b) == a);
  }
}

TEST_CASE("dihedral quandle is i*j = 2j - i", "[algebra]") {
  auto r5 = dihedral_quandle(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(r5.op(i, j) == ((2 * j - i) % 5 + 5) % 5);
}

TEST_CASE("Alexander quandle is a*b = Ta + (1-T)b", "[algebra]") {
  // X4 = Z_2[T]/(T^2+T+1). Element index = 2*c0 + c1 for c0 + c1 T.
  auto x = alexander_quandle(2, {1, 1, 1});
  REQUIRE(x.order() == 4);
  auto poly = [](int idx) { return std::pair<int, int>{idx / 2, idx % 2}; };
  auto index = [](std::pair<int, int> c) { return 2 * c.first + c.second; };
  auto times_t = [](std::pair<int, int> c) {  // T(c0 + c1 T) = c1 + (c0 + c1) T using T^2 = T + 1
    return std::pair<int, int>{c.second, (c.first + c.second) % 2};
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto ta = times_t(poly(a)), tb = times_t(poly(b));
      std::pair<int, int> expect{(ta.first + poly(b).first + tb.first) % 2, (ta.second + poly(b).second + tb.second) % 2};
      CHECK(x.op(a, b) == index(expect));
    }
  // 1 * 0 = T
  CHECK(x.op(2, 0) == 1);
  CHECK_THROWS_AS(alexander_quandle(4, {2, 1}), ValidationError);
}

TEST_CASE("axiom checker reports each failing axiom", "[algebra]") {
  Table not_idempotent = {{1, 1}, {0, 0}};
  auto r = check_quandle(not_idempotent);
  CHECK_FALSE(r.holds(1));
  Table not_invertible = {{0, 0, 0}, {1, 1, 1}, {1, 1, 2}};
  CHECK_FALSE(check_quandle(not_invertible).holds(2));
  CHECK_THROWS_AS(check_quandle(Table{{0, 5}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(Quandle::from_table(not_idempotent), ValidationError);
}

TEST_CASE("homomorphism search agrees with exhaustive enumeration", "[algebra]") {
  std::vector<Quandle> qs = {trivial_quandle(2), dihedral_quandle(3), dihedral_quandle(4), alexander_quandle(2, {1, 1, 1})};
  for (const auto& a : qs)
    for (const auto& b : qs) {
      auto homs = quandle_homs(a, b);
      CHECK(homs.size() == brute_hom_count(a, b));
      for (const auto& h : homs) CHECK(is_homomorphism(a, b, h.map));
    }
}

TEST_CASE("isomorphism search", "[algebra]") {
  auto r3 = dihedral_quandle(3);
  // relabel R3 by the permutation (0 2 1)
  std::vector<int> perm = {2, 0, 1};
  Table t(3, std::vector<int>(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[perm[a]][perm[b]] = perm[r3.op(a, b)];
  auto f = are_isomorphic(r3, Quandle::from_table(t));
  REQUIRE(f);
  CHECK(f->bijective(3));
  CHECK(is_homomorphism(r3, Quandle::from_table(t), f->map));
  CHECK_FALSE(are_isomorphic(r3, trivial_quandle(3)));
  CHECK_FALSE(are_isomorphic(dihedral_quandle(4), alexander_quandle(2, {1, 1, 1})));
}

TEST_CASE(".qnd round trip and errors", "[algebra][io]") {
  for (const auto& file : oracle::bundled_quandle_files()) {
    auto q = oracle::bundled(file);
    CHECK(parse_qnd(format_qnd(q)).table() == q.table());
  }
  CHECK_THROWS_AS(parse_qnd(std::string("quandle 2\n0 1\n")), ParseError);
  CHECK_THROWS_AS(parse_qnd(std::string("magma 2\n0 0\n1 1\n")), ParseError);
  CHECK_THROWS_AS(parse_qnd(std::string("quandle 2\n1 1\n0 0\n")), ValidationError);
}

TEST_CASE("Smith normal form is a unimodular diagonalisation", "[algebra][snf]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6), size(1, 7);
  for (int trial = 0; trial < 60; ++trial) {
    IntegerMatrix m(size(rng), size(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.U * s.U_inv == IntegerMatrix::identity(m.rows()));
    CHECK(s.V * s.V_inv == IntegerMatrix::identity(m.cols()));
    auto f = s.invariant_factors();
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(f[i] > 0);
      if (i + 1 < f.size()) CHECK(f[i + 1] % f[i] == 0);
    }
    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j || i >= s.rank) CHECK(s.D(i, j) == 0);
    // rank over Q equals rank mod a large prime for these small entries
    CHECK(s.rank == rank_mod_p(m, 1000003));
  }
}

TEST_CASE("Smith normal form on a known matrix", "[algebra][snf]") {
  IntegerMatrix m(3, 3);
  int v[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
  auto f = smith_normal_form(m).invariant_factors();
  REQUIRE(f.size() == 3);
  CHECK(f[0] == 2);
  CHECK(f[1] == 6);
  CHECK(f[2] == 12);
}

TEST_CASE("linear solving modulo m", "[algebra]") {
  IntegerMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 0;
  a(1, 1) = 3;
  auto x = solve_mod(a, {BigInt(1), BigInt(3)}, BigInt(4));
  REQUIRE(x);
  CHECK((2 * (*x)[0] + (*x)[1] - 1) % 4 == 0);
  CHECK((3 * (*x)[1] - 3) % 4 == 0);
  IntegerMatrix b(1, 1);
  b(0, 0) = 2;
  CHECK_FALSE(solve_mod(b, {BigInt(1)}, BigInt(4)));
}

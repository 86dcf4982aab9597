#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace qcoc;

namespace {

/// Primary decomposition as sorted prime powers plus a free rank.
std::pair<int, std::vector<long long>> primary(int free_rank, const std::vector<long long>& orders) {
  std::vector<long long> out;
  for (long long d : orders) {
    for (long long p = 2; d > 1; ++p) {
      long long q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      if (q > 1) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return {free_rank, out};
}

std::pair<int, std::vector<long long>> primary(const AbelianGroupStructure& g) {
  std::vector<long long> orders;
  for (const auto& d : g.torsion) orders.push_back(static_cast<long long>(d));
  return primary(g.free_rank, orders);
}

/// H^n(C; Z_m) = Hom(H_n, Z_m) + Ext(H_{n-1}, Z_m).
std::pair<int, std::vector<long long>> uct(const AbelianGroupStructure& hn, const AbelianGroupStructure& hn1, long long m) {
  std::vector<long long> orders(static_cast<std::size_t>(hn.free_rank), m);
  for (const auto& d : hn.torsion) orders.push_back(std::gcd(static_cast<long long>(d), m));
  for (const auto& d : hn1.torsion) orders.push_back(std::gcd(static_cast<long long>(d), m));
  return primary(0, orders);
}

Chain generator(const std::vector<int>& t) {
  Chain z(static_cast<int>(t.size()), 0);
  z.add(t, 1);
  return z;
}

}  // namespace

TEST_CASE("boundary of a pair is (x) - (x*y)", "[chain]") {
  auto r3 = dihedral_quandle(3);
  auto d = boundary(r3, generator({0, 1}), Theory::R);
  CHECK(d.coefficient({0}) == 1);
  CHECK(d.coefficient({2}) == -1);
  CHECK(d.terms().size() == 2);
}

TEST_CASE("boundary terms follow the defining formula", "[chain]") {
  std::mt19937 rng(11);
  for (const auto& file : oracle::bundled_quandle_files()) {
    auto x = oracle::bundled(file);
    std::uniform_int_distribution<int> el(0, x.order() - 1);
    for (int n = 2; n <= 5; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> t(n);
        for (int& v : t) v = el(rng);
        Chain lib = boundary(x, generator(t), Theory::R);
        Chain ref(n - 1, 0);
        for (auto& [f, s] : oracle::boundary_of(x, t)) ref.add(f, s);
        CHECK(lib == ref);
      }
  }
}

TEST_CASE("boundary squares to zero", "[chain][property]") {
  for (const auto& file : oracle::bundled_quandle_files()) {
    auto x = oracle::bundled(file);
    CAPTURE(file);
    for (Theory th : {Theory::R, Theory::Q})
      for (int n = 1; n <= 4; ++n)
        for (auto& t : oracle::all_tuples(x.order(), n + 1)) {
          auto z = generator(t);
          if (th == Theory::Q) z = z.quandle_projection();
          CHECK(boundary(x, boundary(x, z, th), th).is_zero());
        }
    for (Theory th : {Theory::R, Theory::D, Theory::Q})
      for (int n = 1; n <= 3; ++n)
        CHECK((boundary_matrix(x, th, n) * boundary_matrix(x, th, n + 1)).is_zero());
  }
}

TEST_CASE("degenerate chains form a subcomplex", "[chain][property]") {
  for (const auto& file : oracle::bundled_quandle_files()) {
    auto x = oracle::bundled(file);
    for (int n = 2; n <= 5; ++n)
      for (auto& t : oracle::all_tuples(x.order(), n)) {
        if (!is_degenerate(t)) continue;
        auto b = boundary(x, generator(t), Theory::R);
        for (auto& [f, s] : b.terms()) CHECK(is_degenerate(f));
      }
    CHECK_NOTHROW(boundary_matrix(x, Theory::D, 4));
  }
}

TEST_CASE("tuple bases count generators", "[chain]") {
  CHECK(TupleBasis(3, 3, Theory::R).size() == 27);
  CHECK(TupleBasis(3, 3, Theory::Q).size() == 12);
  CHECK(TupleBasis(3, 3, Theory::D).size() == 15);
  for (auto& t : oracle::all_tuples(4, 3)) CHECK(decode_tuple(encode_tuple(t, 4), 4, 3) == t);
}

TEST_CASE("trivial quandle homology is free on the generators", "[chain]") {
  auto t3 = trivial_quandle(3);
  CHECK(homology(t3, Theory::R, 3).to_string() == "Z^27");
  CHECK(homology(t3, Theory::Q, 3).to_string() == "Z^12");
  CHECK(homology(t3, Theory::Q, 2, 2).to_string() == "Z_2^6");
}

TEST_CASE("homology of R3 and X4", "[chain]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto x4 = oracle::bundled("x4.qnd");
  CHECK(cohomology(r3, Theory::Q, 2, 3).is_zero());
  CHECK(cohomology(r3, Theory::Q, 3, 3).to_string() == "Z_3");
  CHECK(homology(r3, Theory::Q, 3, 3).to_string() == "Z_3");
  CHECK(homology(r3, Theory::Q, 2).is_zero());
  CHECK(homology(r3, Theory::Q, 3).to_string() == "Z_3");
  CHECK(cohomology(x4, Theory::Q, 2, 2).to_string() == "Z_2");
  CHECK(cohomology(x4, Theory::Q, 3, 2).to_string() == "Z_2^3");
  CHECK(homology(x4, Theory::Q, 2).to_string() == "Z_2");
  CHECK(homology(x4, Theory::Q, 3).to_string() == "Z_2 + Z_4");
  // 2-torsion only, so odd coefficients see nothing; Z_4 sees both summands
  CHECK(cohomology(x4, Theory::Q, 3, 3).is_zero());
  CHECK(cohomology(x4, Theory::Q, 3, 5).is_zero());
  CHECK(cohomology(x4, Theory::Q, 3, 4).to_string() == "Z_2^2 + Z_4");
}

TEST_CASE("cohomology over F_p matches an independent rank computation", "[chain][oracle]") {
  for (const auto& file : oracle::bundled_quandle_files()) {
    auto x = oracle::bundled(file);
    CAPTURE(file);
    for (int p : {2, 3})
      for (int n = 1; n <= 3; ++n) {
        CAPTURE(p, n);
        CHECK(static_cast<int>(cohomology(x, Theory::Q, n, p).p_rank(p)) == oracle::quandle_cohomology_dim(x, n, p));
        CHECK(cocycle_space(x, n, p).size() - coboundary_dimension(x, n, p) ==
              static_cast<std::size_t>(oracle::quandle_cohomology_dim(x, n, p)));
      }
  }
}

TEST_CASE("universal coefficients relate Z and Z_m computations", "[chain][oracle]") {
  for (const auto& file : oracle::bundled_quandle_files()) {
    auto x = oracle::bundled(file);
    CAPTURE(file);
    for (int n = 2; n <= 3; ++n) {
      auto hn = homology(x, Theory::Q, n), hn1 = homology(x, Theory::Q, n - 1);
      for (int m : {2, 3, 4, 6}) {
        CAPTURE(n, m);
        CHECK(primary(cohomology(x, Theory::Q, n, m)) == uct(hn, hn1, m));
      }
    }
  }
}

TEST_CASE("brute-force cocycle enumeration for R3", "[chain][oracle]") {
  auto r3 = dihedral_quandle(3);
  // every function on the 6 non-degenerate pairs, checked against the defining coboundary
  auto pairs = oracle::nondegenerate_tuples(3, 2);
  auto triples = oracle::nondegenerate_tuples(3, 3);
  int cocycles = 0;
  for (auto& vals : oracle::all_tuples(3, static_cast<int>(pairs.size()))) {
    std::map<std::vector<int>, int> phi;
    for (std::size_t i = 0; i < pairs.size(); ++i) phi[pairs[i]] = vals[i];
    bool ok = true;
    for (auto& t : triples) {
      int s = 0;
      for (auto& [f, sign] : oracle::boundary_of(r3, t))
        if (phi.count(f)) s += sign * phi[f];
      ok &= s % 3 == 0;
    }
    cocycles += ok;
  }
  // Z^2 = B^2 has dimension |X| - 1 = 2 here, so 9 cocycles, all coboundaries
  CHECK(cocycles == 9);
  CHECK(cocycle_space(r3, 2, 3).size() == 2);
  CHECK(coboundary_dimension(r3, 2, 3) == 2);
}

TEST_CASE("the cocycle xi of R3", "[chain]") {
  auto r3 = dihedral_quandle(3);
  auto xi = xi_cocycle();
  CHECK(xi.is_quandle_cochain());
  CHECK(delta(r3, xi).is_zero());
  CHECK_FALSE(is_coboundary(r3, xi));
  std::vector<int> p = {0, 1, 2};
  do {
    Chain z(3, 0);
    z.add({p[0], p[1], p[2]}, 1);
    z.add({p[0], p[2], p[0]}, 1);
    CHECK(boundary(r3, z).is_zero());
    CHECK(pairing(z, xi) % 3 == 1);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("coboundary witnesses are verified", "[chain]") {
  auto x4 = oracle::bundled("x4.qnd");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Cochain f(4, 1, 2);
    for (int a = 0; a < 4; ++a) f.set(std::vector<int>{a}, bit(rng));
    auto df = delta(x4, f);
    auto eta = is_coboundary(x4, df);
    REQUIRE(eta);
    CHECK(delta(x4, *eta) == df);
  }
  Cochain g(4, 1, 2);
  g.set(std::vector<int>{0}, 1);
  g.set(std::vector<int>{1}, 1);
  auto dg = delta(x4, g);
  // (dg)(x,y) = g(x) - g(x*y)
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(dg(std::vector<int>{a, b}) == ((g(std::vector<int>{a}) - g(std::vector<int>{x4.op(a, b)})) % 2 + 2) % 2);
}

TEST_CASE("pairing with a coboundary vanishes on cycles", "[chain][property]") {
  auto r3 = dihedral_quandle(3);
  auto xi = xi_cocycle();
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    Cochain f(3, 2, 3);
    for (auto& t : oracle::nondegenerate_tuples(3, 2)) f.set(t, v(rng));
    auto shifted = xi + delta(r3, f);
    Chain z(3, 0);
    z.add({0, 1, 2}, 1);
    z.add({0, 2, 0}, 1);
    CHECK((pairing(z, shifted) - pairing(z, xi)) % 3 == 0);
  }
}

TEST_CASE("boundary preimages", "[chain]") {
  // solved over Z_3
  auto r3 = dihedral_quandle(3);
  Chain c(3, 3);
  c.add({0, 1, 2}, 1);
  c.add({1, 2, 0}, -2);
  auto b = boundary(r3, c);
  auto pre = boundary_preimage(r3, b);
  REQUIRE(pre);
  CHECK(boundary(r3, *pre) == b);
  Chain cyc(3, 3);
  cyc.add({0, 1, 2}, 1);
  cyc.add({0, 2, 0}, 1);
  CHECK_FALSE(boundary_preimage(r3, cyc));
}

TEST_CASE("resource limits are enforced", "[chain]") {
  auto r4 = dihedral_quandle(4);
  CHECK_THROWS_AS(homology(r4, Theory::Q, 6), LimitError);
  ComplexLimits tiny{5, 1024};
  CHECK_THROWS_AS(homology(r4, Theory::Q, 4, 0, tiny), LimitError);
  CHECK_THROWS_AS(parse_theory("X"), ParseError);
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace qcoc;

namespace {

std::map<int, std::uint64_t> as_map(const GroupRingElement& v) { return v.terms(); }

Diagram resolve(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (kind == "pd") return build_diagram(parse_pd(rest));
  if (kind == "family") return family(rest);
  if (kind == "braid") {
    auto c = rest.find(':');
    return braid_closure(parse_braid(rest.substr(c + 1), std::stoi(rest.substr(0, c))));
  }
  if (kind == "two_bridge") {
    std::istringstream in(rest);
    std::vector<int> v;
    for (int a; in >> a;) v.push_back(a);
    return two_bridge(v);
  }
  throw std::runtime_error("unknown diagram form " + spec);
}

/// Every diagram the tests ship with: the knot table, the equivalent pairs and the families at small sizes.
std::vector<std::pair<std::string, Diagram>> bundled_diagrams() {
  std::vector<std::pair<std::string, Diagram>> out;
  for (auto& row : oracle::read_csv(oracle::data("knots.csv")))
    if (row[0] != "name") out.emplace_back(row[0], build_diagram(parse_pd(row[1])));
  for (auto& row : oracle::read_csv(oracle::data("equivalent_pairs.csv")))
    if (row[0] != "name") {
      out.emplace_back(row[0] + " a", resolve(row[1]));
      out.emplace_back(row[0] + " b", resolve(row[2]));
    }
  for (int n = 1; n <= 6; ++n) out.emplace_back("torus2:" + std::to_string(n), torus2(n));
  for (int n = -2; n <= 4; ++n) out.emplace_back("doubled:" + std::to_string(n), doubled(n));
  out.emplace_back("tprime:6", tprime(6));
  out.emplace_back("unknot", build_diagram(parse_pd("")));
  return out;
}

struct Setting {
  std::string name;
  Quandle x;
  Cochain phi;
};

std::vector<Setting> two_cocycle_settings() {
  return {{"X4", oracle::bundled("x4.qnd"), read_cochain(oracle::data("phi_x4.coc"))},
          {"T2", oracle::bundled("t2.qnd"), read_cochain(oracle::data("phi_t2.coc"))}};
}

}  // namespace

TEST_CASE("coloring search agrees with exhaustive enumeration", "[coloring][oracle]") {
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    for (const auto& file : {"r3.qnd", "x4.qnd", "t2.qnd"}) {
      auto x = oracle::bundled(file);
      if (std::pow(x.order(), d.arc_count) > 3e5) continue;
      std::vector<std::vector<int>> found;
      for (auto& c : colorings(d, x)) {
        CHECK(is_coloring(d, x, c.arcs));
        found.push_back(c.arcs);
      }
      std::sort(found.begin(), found.end());
      CHECK(found == oracle::brute_colorings(d, x));
    }
  }
}

TEST_CASE("R3 coloring counts match Fox 3-colorings", "[coloring][oracle]") {
  auto r3 = oracle::bundled("r3.qnd");
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    CHECK(static_cast<int>(colorings(d, r3).size()) == oracle::fox3_count(d));
  }
}

TEST_CASE("shadow colorings are exactly the region extensions", "[coloring]") {
  auto r3 = oracle::bundled("r3.qnd");
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    auto sc = shadow_colorings(d, r3);
    CHECK(sc.size() == colorings(d, r3).size() * 3);
    for (auto& s : sc) CHECK(is_shadow_coloring(d, r3, s));
  }
}

TEST_CASE("invariants agree with brute-force state sums", "[coloring][oracle]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    if (d.crossings.size() <= 5) CHECK(as_map(shadow_invariant(d, r3, xi)) == oracle::brute_shadow_invariant(d, r3, xi));
    for (auto& s : two_cocycle_settings()) {
      if (std::pow(s.x.order(), d.arc_count) > 3e5) continue;
      CAPTURE(s.name);
      CHECK(as_map(cocycle_invariant(d, s.x, s.phi)) == oracle::brute_cocycle_invariant(d, s.x, s.phi));
    }
  }
}

TEST_CASE("state sum equals the pairing with the represented cycle", "[coloring][property]") {
  auto diagrams = bundled_diagrams();
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  auto settings = two_cocycle_settings();
  std::mt19937 rng(2024);
  int checked = 0;
  while (checked < 200) {
    auto& [name, d] = diagrams[rng() % diagrams.size()];
    auto& s = settings[rng() % settings.size()];
    auto cs = colorings(d, s.x);
    auto& c = cs[rng() % cs.size()];
    CAPTURE(name, s.name);
    auto z = represented_2cycle(d, c);
    CHECK(boundary(s.x, z).is_zero());
    long long direct = 0;
    for (const auto& cr : d.crossings) direct += cr.sign * s.phi(std::vector<int>{c.arcs[cr.source_under_arc], c.arcs[cr.over_arc]});
    const int m = s.phi.modulus();
    CHECK(boltzmann_weight(d, c, s.phi) == ((direct % m) + m) % m);
    CHECK(boltzmann_weight(d, c, s.phi) == ((pairing(z, s.phi) % m) + m) % m);

    auto scs = shadow_colorings(d, r3);
    auto& sc = scs[rng() % scs.size()];
    auto z3 = represented_3cycle(d, sc);
    CHECK(boundary(r3, z3).is_zero());
    CHECK(shadow_boltzmann_weight(d, sc, xi) == ((pairing(z3, xi) % 3) + 3) % 3);
    ++checked;
  }
}

TEST_CASE("coefficients sum to the number of colorings", "[coloring][property]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    auto nc = colorings(d, r3).size();
    CHECK(shadow_invariant(d, r3, xi).total() == 3 * nc);
    for (auto& s : two_cocycle_settings()) CHECK(cocycle_invariant(d, s.x, s.phi).total() == colorings(d, s.x).size());
  }
}

TEST_CASE("equivalent diagrams have equal invariants", "[coloring][property]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto r4 = oracle::bundled("r4.qnd");
  auto xi = xi_cocycle();
  auto settings = two_cocycle_settings();
  for (auto& row : oracle::read_csv(oracle::data("equivalent_pairs.csv"))) {
    if (row[0] == "name") continue;
    CAPTURE(row[0]);
    auto a = resolve(row[1]), b = resolve(row[2]);
    CHECK(a.component_count == b.component_count);
    CHECK(shadow_invariant(a, r3, xi) == shadow_invariant(b, r3, xi));
    CHECK(colorings(a, r4).size() == colorings(b, r4).size());
    for (auto& s : settings) CHECK(cocycle_invariant(a, s.x, s.phi) == cocycle_invariant(b, s.x, s.phi));
  }
}

TEST_CASE("shadow invariant does not depend on the unbounded face", "[coloring][property]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    auto base = shadow_invariant(d, r3, xi);
    for (int r = 0; r < d.region_count; ++r) {
      CHECK(shadow_invariant(d.with_unbounded(r), r3, xi) == base);
      CHECK(shadow_invariant(d, r3, xi, r) == base);
    }
  }
}

TEST_CASE("changing the cocycle by a coboundary keeps the invariant", "[coloring][property]") {
  auto x4 = oracle::bundled("x4.qnd");
  auto phi = read_cochain(oracle::data("phi_x4.coc"));
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  std::vector<Diagram> ds = {torus2(3), two_bridge({2, 2}), doubled(4), two_bridge({3, 1, 3}), torus2(4)};
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Cochain eta(4, 1, 2);
    for (int a = 0; a < 4; ++a) eta.set(std::vector<int>{a}, static_cast<int>(rng() % 2));
    Cochain eta2(3, 2, 3);
    for (auto& t : oracle::nondegenerate_tuples(3, 2)) eta2.set(t, static_cast<int>(rng() % 3));
    auto phi2 = phi + delta(x4, eta);
    auto xi2 = xi + delta(r3, eta2);
    for (auto& d : ds) {
      CHECK(cocycle_invariant(d, x4, phi2) == cocycle_invariant(d, x4, phi));
      CHECK(shadow_invariant(d, r3, xi2) == shadow_invariant(d, r3, xi));
    }
  }
}

TEST_CASE("mirror image negates exponents", "[coloring]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  auto x4 = oracle::bundled("x4.qnd");
  auto phi = read_cochain(oracle::data("phi_x4.coc"));
  for (auto& [name, d] : bundled_diagrams()) {
    CAPTURE(name);
    CHECK(shadow_invariant(mirror(d), r3, xi) == shadow_invariant(d, r3, xi).negated());
    CHECK(cocycle_invariant(mirror(d), x4, phi) == cocycle_invariant(d, x4, phi).negated());
  }
}

TEST_CASE("invariants reject non-cocycles", "[coloring]") {
  auto r3 = oracle::bundled("r3.qnd");
  Cochain bad(3, 3, 3);
  bad.set(std::vector<int>{0, 1, 2}, 1);
  CHECK_THROWS_AS(shadow_invariant(torus2(3), r3, bad), ValidationError);
  Cochain degenerate(3, 2, 3);
  degenerate.set(std::vector<int>{0, 0}, 1);
  CHECK_THROWS_AS(cocycle_invariant(torus2(3), r3, degenerate), ValidationError);
}

TEST_CASE("family values", "[coloring]") {
  auto r3 = oracle::bundled("r3.qnd");
  auto xi = xi_cocycle();
  auto sv = [&](const Diagram& d) { return groupring_format(shadow_invariant(d, r3, xi)); };
  CHECK(sv(torus2(3)) == "9 + 18t");
  CHECK(sv(torus2(6)) == "9 + 18t^2");
  CHECK(sv(torus2(4)) == "9");
  CHECK(sv(build_diagram(parse_pd(""))) == "9");
  CHECK(sv(doubled(1)) == "9 + 18t");
  CHECK(sv(tprime(6)) == "9 + 18t");
}

#ifndef QCOC_EXTENSIONS_HPP
#define QCOC_EXTENSIONS_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcoc/abelian_group.hpp"
#include "qcoc/chain_complex.hpp"
#include "qcoc/error.hpp"
#include "qcoc/quandle.hpp"

namespace qcoc {

/// A function from n-tuples of a quandle to a finite abelian group, values stored as element indices.
class GroupCochain {
 public:
  GroupCochain() = default;
  GroupCochain(FiniteAbelianGroup group, int order, int degree)
      : group_(std::move(group)), order_(order), degree_(degree), values_(tuple_count(order, degree), 0) {}

  /// Z/m-valued cochain viewed in the cyclic group Z_m.
  static GroupCochain from_cochain(const Cochain& c) {
    if (c.modulus() < 2) throw ValidationError("group cochains need finite coefficients");
    GroupCochain g(FiniteAbelianGroup::cyclic(c.modulus()), c.order(), c.degree());
    for (std::size_t i = 0; i < g.values_.size(); ++i) g.values_[i] = static_cast<int>(c.at(i));
    return g;
  }

  /// Per-factor components, one Z/m_i-valued cochain for each cyclic factor.
  std::vector<Cochain> components() const {
    std::vector<Cochain> out;
    for (int f = 0; f < group_.rank(); ++f) out.emplace_back(order_, degree_, group_.orders()[f]);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      auto comp = group_.decode(values_[i]);
      for (int f = 0; f < group_.rank(); ++f) out[f].set_code(i, comp[f]);
    }
    return out;
  }

  static GroupCochain from_components(const FiniteAbelianGroup& group, const std::vector<Cochain>& comps) {
    if (static_cast<int>(comps.size()) != group.rank()) throw ValidationError("component count does not match the group");
    if (comps.empty()) throw ValidationError("cannot infer the shape of a cochain in the trivial group");
    GroupCochain g(group, comps[0].order(), comps[0].degree());
    std::vector<int> comp(group.rank());
    for (std::size_t i = 0; i < g.values_.size(); ++i) {
      for (int f = 0; f < group.rank(); ++f) comp[f] = static_cast<int>(comps[f].at(i));
      g.values_[i] = group.encode(comp);
    }
    return g;
  }

  Cochain to_cochain() const {
    if (group_.rank() != 1) throw ValidationError("only cyclic-valued cochains convert to Z/m cochains");
    return components()[0];
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  int order() const noexcept { return order_; }
  int degree() const noexcept { return degree_; }
  const std::vector<int>& values() const noexcept { return values_; }

  int operator()(std::span<const int> t) const { return values_[encode_tuple(t, order_)]; }
  int at(TupleCode code) const { return values_[code]; }
  void set(std::span<const int> t, int v) { set_code(encode_tuple(t, order_), v); }
  void set_code(TupleCode code, int v) {
    if (v < 0 || v >= group_.order()) throw ValidationError("cochain value outside the coefficient group");
    values_[code] = v;
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](int v) { return v == 0; });
  }
  bool is_quandle_cochain() const {
    for (TupleCode c = 0; c < values_.size(); ++c)
      if (values_[c] != 0 && is_degenerate(decode_tuple(c, order_, degree_))) return false;
    return true;
  }

  GroupCochain operator+(const GroupCochain& o) const { return combine(o, false); }
  GroupCochain operator-(const GroupCochain& o) const { return combine(o, true); }
  GroupCochain negated() const {
    GroupCochain out = *this;
    for (auto& v : out.values_) v = group_.neg(v);
    return out;
  }

  bool operator==(const GroupCochain& o) const {
    return group_ == o.group_ && order_ == o.order_ && degree_ == o.degree_ && values_ == o.values_;
  }

 private:
  GroupCochain combine(const GroupCochain& o, bool subtract) const {
    if (!(group_ == o.group_) || order_ != o.order_ || degree_ != o.degree_)
      throw ValidationError("cochains are not compatible");
    GroupCochain out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i)
      out.values_[i] = subtract ? group_.sub(values_[i], o.values_[i]) : group_.add(values_[i], o.values_[i]);
    return out;
  }

  FiniteAbelianGroup group_;
  int order_ = 0, degree_ = 0;
  std::vector<int> values_;
};

inline GroupCochain delta(const Quandle& x, const GroupCochain& c) {
  if (c.order() != x.order()) throw ValidationError("cochain order does not match the quandle");
  const auto& a = c.group();
  GroupCochain out(a, x.order(), c.degree() + 1);
  const TupleCode total = tuple_count(x.order(), c.degree() + 1);
  for (TupleCode code = 0; code < total; ++code) {
    auto t = decode_tuple(code, x.order(), c.degree() + 1);
    int s = 0;
    for (auto& [face, sign] : boundary_terms(x, t)) s = sign > 0 ? a.add(s, c(face)) : a.sub(s, c(face));
    out.set_code(code, s);
  }
  return out;
}

/// eta with delta(eta) = c, solved one cyclic factor at a time.
inline std::optional<GroupCochain> is_coboundary(const Quandle& x, const GroupCochain& c, const ComplexLimits& limits = {}) {
  if (c.group().is_trivial()) return GroupCochain(c.group(), x.order(), std::max(c.degree() - 1, 0));
  std::vector<Cochain> parts;
  for (const auto& comp : c.components()) {
    auto eta = is_coboundary(x, comp, limits);
    if (!eta) return std::nullopt;
    parts.push_back(std::move(*eta));
  }
  return GroupCochain::from_components(c.group(), parts);
}

namespace detail {

inline void require_group_2cocycle(const Quandle& x, const GroupCochain& phi) {
  if (phi.degree() != 2) throw ValidationError("expected a 2-cochain, got degree " + std::to_string(phi.degree()));
  if (phi.order() != x.order()) throw ValidationError("cochain order does not match the quandle");
  if (!phi.is_quandle_cochain()) throw ValidationError("phi(x,x) must vanish");
  if (!delta(x, phi).is_zero()) throw ValidationError("phi is not a 2-cocycle");
}

}  // namespace detail

/**
 * E(X, A, phi) on A x X, element (a, x) at index a*|X| + x, with
 * (a1, x1) * (a2, x2) = (a1 + phi(x1, x2), x1 * x2).
 * `checked = false` skips the cocycle test (used to exhibit failures).
 */
inline Quandle extend(const Quandle& x, const GroupCochain& phi, bool checked = true) {
  if (checked) detail::require_group_2cocycle(x, phi);
  const auto& a = phi.group();
  const int n = x.order(), m = a.order();
  Table t(m * n, std::vector<int>(m * n));
  for (int a1 = 0; a1 < m; ++a1)
    for (int x1 = 0; x1 < n; ++x1)
      for (int a2 = 0; a2 < m; ++a2)
        for (int x2 = 0; x2 < n; ++x2) {
          std::vector<int> pair{x1, x2};
          t[a1 * n + x1][a2 * n + x2] = a.add(a1, phi(pair)) * n + x.op(x1, x2);
        }
  std::string label = "E(" + x.label() + "," + a.to_string() + ")";
  if (checked) return Quandle::from_table(t, label);
  return Quandle::unchecked(t, label);
}

inline Quandle extend(const Quandle& x, const Cochain& phi, bool checked = true) {
  return extend(x, GroupCochain::from_cochain(phi), checked);
}

/**
 * eta with phi1 - phi2 = delta(eta), if the cocycles are cohomologous. The
 * map f(a, x) = (a + eta(x), x) from E(X,A,phi1) to E(X,A,phi2) is checked to
 * be an isomorphism over X before returning.
 */
inline std::optional<GroupCochain> extensions_equivalent(const Quandle& x, const GroupCochain& phi1,
                                                         const GroupCochain& phi2) {
  if (!(phi1.group() == phi2.group())) throw ValidationError("cocycles take values in different groups");
  detail::require_group_2cocycle(x, phi1);
  detail::require_group_2cocycle(x, phi2);
  auto eta = is_coboundary(x, phi1 - phi2);
  if (!eta) return std::nullopt;
  Quandle e1 = extend(x, phi1), e2 = extend(x, phi2);
  const int n = x.order();
  const auto& a = phi1.group();
  std::vector<int> f(e1.order());
  for (int ai = 0; ai < a.order(); ++ai)
    for (int xi = 0; xi < n; ++xi) f[ai * n + xi] = a.add(ai, (*eta)(std::vector<int>{xi})) * n + xi;
  if (!is_homomorphism(e1, e2, f) || !QuandleHom{f}.bijective(e2.order()))
    throw InternalError("coboundary witness does not induce an equivalence");
  return eta;
}

// ---------------------------------------------------------------------------
// Short exact sequences, sections, obstructions

/// 0 -> N --i--> G --p--> A -> 0 with i, p given as element tables.
struct ShortExactSequence {
  FiniteAbelianGroup n, g, a;
  std::vector<int> i, p;

  void validate() const {
    if (static_cast<int>(i.size()) != n.order() || static_cast<int>(p.size()) != g.order())
      throw ValidationError("map tables have the wrong length");
    for (int v : i)
      if (v < 0 || v >= g.order()) throw ValidationError("i maps outside G");
    for (int v : p)
      if (v < 0 || v >= a.order()) throw ValidationError("p maps outside A");
    for (int x = 0; x < n.order(); ++x)
      for (int y = 0; y < n.order(); ++y)
        if (i[n.add(x, y)] != g.add(i[x], i[y])) throw ValidationError("i is not a homomorphism");
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y)
        if (p[g.add(x, y)] != a.add(p[x], p[y])) throw ValidationError("p is not a homomorphism");
    std::vector<bool> hit_g(g.order(), false), hit_a(a.order(), false);
    for (int v : i) {
      if (hit_g[v]) throw ValidationError("i is not injective");
      hit_g[v] = true;
    }
    for (int v : p) hit_a[v] = true;
    for (bool h : hit_a)
      if (!h) throw ValidationError("p is not surjective");
    for (int y = 0; y < g.order(); ++y)
      if ((p[y] == 0) != hit_g[y]) throw ValidationError("image of i differs from kernel of p");
  }

  /// i^{-1}(y), or nothing when y is not in the image.
  std::optional<int> preimage(int y) const {
    for (int x = 0; x < n.order(); ++x)
      if (i[x] == y) return x;
    return std::nullopt;
  }

  /// 0 -> Z_k -> Z_{k*m} -> Z_m -> 0, i(x) = m*x, p(y) = y mod m.
  static ShortExactSequence cyclic(int k, int m) {
    ShortExactSequence s{FiniteAbelianGroup::cyclic(k), FiniteAbelianGroup::cyclic(k * m), FiniteAbelianGroup::cyclic(m), {}, {}};
    for (int x = 0; x < k; ++x) s.i.push_back(m * x);
    for (int y = 0; y < k * m; ++y) s.p.push_back(y % m);
    s.validate();
    return s;
  }

  /// "2,4,2" = N, G, A orders of a cyclic sequence.
  static ShortExactSequence parse_shorthand(const std::string& text) {
    auto g = FiniteAbelianGroup::parse(text);
    const auto& o = g.orders();
    if (o.size() != 3 || o[1] != o[0] * o[2])
      throw ParseError("sequence shorthand must be k,k*m,m (cyclic groups), got '" + text + "'");
    return cyclic(o[0], o[2]);
  }
};

/**
 * Text format, one item per line ('#' starts a comment):
 *   N 2
 *   G 4
 *   A 2
 *   i 0 2
 *   p 0 1 0 1
 */
inline ShortExactSequence parse_ses(std::istream& in) {
  ShortExactSequence s;
  bool seen[5] = {false, false, false, false, false};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    auto where = " on line " + std::to_string(lineno);
    if (key == "N" || key == "G" || key == "A") {
      auto grp = FiniteAbelianGroup::parse(rest);
      (key == "N" ? s.n : key == "G" ? s.g : s.a) = grp;
      seen[key == "N" ? 0 : key == "G" ? 1 : 2] = true;
    } else if (key == "i" || key == "p") {
      std::istringstream vs(rest);
      std::vector<int> vals;
      std::string tok;
      while (vs >> tok) {
        try {
          vals.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw ParseError("bad map value '" + tok + "'" + where);
        }
      }
      (key == "i" ? s.i : s.p) = vals;
      seen[key == "i" ? 3 : 4] = true;
    } else {
      throw ParseError("unknown key '" + key + "'" + where);
    }
  }
  for (bool b : seen)
    if (!b) throw ParseError("sequence file needs N, G, A, i and p lines");
  s.validate();
  return s;
}

inline ShortExactSequence read_ses(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return parse_ses(f);
}

inline std::string format_ses(const ShortExactSequence& s) {
  auto groups = [](const FiniteAbelianGroup& g) {
    std::string out;
    for (std::size_t k = 0; k < g.orders().size(); ++k) out += (k ? "," : "") + std::to_string(g.orders()[k]);
    return out.empty() ? std::string("1") : out;
  };
  std::string out = "N " + groups(s.n) + "\nG " + groups(s.g) + "\nA " + groups(s.a) + "\ni";
  for (int v : s.i) out += " " + std::to_string(v);
  out += "\np";
  for (int v : s.p) out += " " + std::to_string(v);
  return out + "\n";
}

/// A set map s: A -> G with p(s(a)) = a and s(0) = 0.
struct Section {
  std::vector<int> table;

  void validate(const ShortExactSequence& ses) const {
    if (static_cast<int>(table.size()) != ses.a.order()) throw ValidationError("section must have one value per element of A");
    for (int a = 0; a < ses.a.order(); ++a) {
      if (table[a] < 0 || table[a] >= ses.g.order()) throw ValidationError("section value outside G");
      if (ses.p[table[a]] != a) throw ValidationError("p(s(" + std::to_string(a) + ")) != " + std::to_string(a));
    }
    if (table[0] != 0) throw ValidationError("section must send 0 to 0");
  }

  /// Smallest preimage of each element.
  static Section minimal(const ShortExactSequence& ses) {
    Section s{std::vector<int>(ses.a.order(), -1)};
    for (int y = ses.g.order() - 1; y >= 0; --y) s.table[ses.p[y]] = y;
    return s;
  }

  /// "0:0,1:3" (a:g pairs) or "0 3" (values in order).
  static Section parse(const std::string& text, const ShortExactSequence& ses) {
    Section s{std::vector<int>(ses.a.order(), -1)};
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::string tok;
    int next = 0;
    while (in >> tok) {
      try {
        if (auto c = tok.find(':'); c != std::string::npos) {
          int a = std::stoi(tok.substr(0, c));
          if (a < 0 || a >= ses.a.order()) throw ParseError("section key out of range: " + tok);
          s.table[a] = std::stoi(tok.substr(c + 1));
        } else {
          if (next >= ses.a.order()) throw ParseError("too many section values");
          s.table[next++] = std::stoi(tok);
        }
      } catch (const std::invalid_argument&) {
        throw ParseError("bad section entry '" + tok + "'");
      }
    }
    for (int v : s.table)
      if (v < 0) throw ParseError("section does not assign every element of A");
    s.validate(ses);
    return s;
  }
};

struct Obstruction {
  GroupCochain theta;                 // values in N
  std::optional<GroupCochain> xi;     // delta(xi) = theta, when theta is a coboundary
};

namespace detail {

inline GroupCochain sectioned(const GroupCochain& phi, const ShortExactSequence& ses, const Section& s) {
  GroupCochain out(ses.g, phi.order(), phi.degree());
  for (TupleCode c = 0; c < phi.values().size(); ++c) out.set_code(c, s.table[phi.at(c)]);
  return out;
}

}  // namespace detail

/**
 * theta(x1,x2,x3) = i^{-1}[ s phi(x1,x2) + s phi(x1*x2,x3) - s phi(x1,x3) - s phi(x1*x3,x2*x3) ],
 * verified to be a quandle 3-cocycle, with a coboundary witness when one exists.
 */
inline Obstruction obstruction_cocycle(const Quandle& x, const GroupCochain& phi, const ShortExactSequence& ses,
                                       const Section& s) {
  ses.validate();
  s.validate(ses);
  if (!(phi.group() == ses.a)) throw ValidationError("phi must take values in A");
  detail::require_group_2cocycle(x, phi);
  auto sphi = detail::sectioned(phi, ses, s);
  const auto& g = ses.g;
  const int n = x.order();
  GroupCochain theta(ses.n, n, 3);
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x3 = 0; x3 < n; ++x3) {
        auto v = [&](int a, int b) { return sphi(std::vector<int>{a, b}); };
        int bracket = g.sub(g.add(v(x1, x2), v(x.op(x1, x2), x3)), g.add(v(x1, x3), v(x.op(x1, x3), x.op(x2, x3))));
        auto pre = ses.preimage(bracket);
        if (!pre) throw InternalError("obstruction bracket is not in the image of i");
        theta.set(std::vector<int>{x1, x2, x3}, *pre);
      }
  if (!theta.is_quandle_cochain()) throw InternalError("obstruction does not vanish on degenerate triples");
  if (!delta(x, theta).is_zero()) throw InternalError("obstruction is not a cocycle");
  return Obstruction{theta, is_coboundary(x, theta)};
}

/// w with theta' - theta = delta(w) for the obstructions of sections s and s2; w = -(sigma o phi), s2 = s + i sigma.
inline GroupCochain sections_cohomologous(const Quandle& x, const GroupCochain& phi, const ShortExactSequence& ses,
                                          const Section& s, const Section& s2) {
  s.validate(ses);
  s2.validate(ses);
  std::vector<int> sigma(ses.a.order());
  for (int a = 0; a < ses.a.order(); ++a) {
    auto pre = ses.preimage(ses.g.sub(s2.table[a], s.table[a]));
    if (!pre) throw InternalError("sections differ outside the image of i");
    sigma[a] = *pre;
  }
  GroupCochain w(ses.n, x.order(), phi.degree());
  for (TupleCode c = 0; c < phi.values().size(); ++c) w.set_code(c, ses.n.neg(sigma[phi.at(c)]));
  auto t1 = obstruction_cocycle(x, phi, ses, s).theta;
  auto t2 = obstruction_cocycle(x, phi, ses, s2).theta;
  if (!(t2 - t1 == delta(x, w))) throw InternalError("section change identity failed");
  return w;
}

/**
 * Quandle on G x X, element (g, x) at index g*|X| + x, with
 * (g1, x1) * (g2, x2) = (g1 + s phi(x1,x2) + i xi(x1,x2), x1 * x2).
 * Requires delta(xi) = theta; (g, x) -> (p(g), x) is checked to be a
 * homomorphism onto E(X, A, phi).
 */
inline Quandle lift_quandle(const Quandle& x, const GroupCochain& phi, const ShortExactSequence& ses, const Section& s,
                            const GroupCochain& xi) {
  auto ob = obstruction_cocycle(x, phi, ses, s);
  if (!(xi.group() == ses.n) || xi.degree() != 2) throw ValidationError("xi must be a 2-cochain with values in N");
  if (!(delta(x, xi) == ob.theta)) throw ValidationError("delta(xi) differs from the obstruction cocycle");
  auto sphi = detail::sectioned(phi, ses, s);
  const auto& g = ses.g;
  const int n = x.order(), m = g.order();
  Table t(m * n, std::vector<int>(m * n));
  for (int g1 = 0; g1 < m; ++g1)
    for (int x1 = 0; x1 < n; ++x1)
      for (int g2 = 0; g2 < m; ++g2)
        for (int x2 = 0; x2 < n; ++x2) {
          std::vector<int> pair{x1, x2};
          t[g1 * n + x1][g2 * n + x2] = g.add(g.add(g1, sphi(pair)), ses.i[xi(pair)]) * n + x.op(x1, x2);
        }
  Quandle lift = Quandle::from_table(t, "lift(" + x.label() + "," + g.to_string() + ")");
  Quandle e = extend(x, phi);
  std::vector<int> proj(m * n);
  for (int g1 = 0; g1 < m; ++g1)
    for (int x1 = 0; x1 < n; ++x1) proj[g1 * n + x1] = ses.p[g1] * n + x1;
  if (!is_homomorphism(lift, e, proj)) throw InternalError("p x id is not a homomorphism onto E(X,A,phi)");
  return lift;
}

}  // namespace qcoc

#endif

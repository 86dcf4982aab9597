#ifndef QCOC_CHAIN_COMPLEX_HPP
#define QCOC_CHAIN_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcoc/error.hpp"
#include "qcoc/matrix.hpp"
#include "qcoc/quandle.hpp"

namespace qcoc {

/// Rack complex C^R, degenerate subcomplex C^D, quandle complex C^Q.
enum class Theory { R, D, Q };

inline char theory_name(Theory t) { return t == Theory::R ? 'R' : t == Theory::D ? 'D' : 'Q'; }

inline Theory parse_theory(const std::string& s) {
  if (s == "R" || s == "r") return Theory::R;
  if (s == "D" || s == "d") return Theory::D;
  if (s == "Q" || s == "q") return Theory::Q;
  throw ParseError("unknown theory '" + s + "' (expected R, D or Q)");
}

/// Degree and memory bounds for chain-level computations.
struct ComplexLimits {
  int max_degree = 5;
  std::size_t memory_cap_bytes = std::size_t(2) << 30;
};

using TupleCode = std::uint64_t;

inline TupleCode encode_tuple(std::span<const int> tuple, int order) {
  TupleCode code = 0;
  for (int x : tuple) code = code * static_cast<TupleCode>(order) + static_cast<TupleCode>(x);
  return code;
}

inline std::vector<int> decode_tuple(TupleCode code, int order, int degree) {
  std::vector<int> t(degree);
  for (int i = degree - 1; i >= 0; --i) {
    t[i] = static_cast<int>(code % static_cast<TupleCode>(order));
    code /= static_cast<TupleCode>(order);
  }
  return t;
}

inline bool is_degenerate(std::span<const int> tuple) {
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
    if (tuple[i] == tuple[i + 1]) return true;
  return false;
}

inline TupleCode tuple_count(int order, int degree) {
  TupleCode n = 1;
  for (int i = 0; i < degree; ++i) n *= static_cast<TupleCode>(order);
  return n;
}

/**
 * The ordered generators of C_n^W(X): all n-tuples (R), tuples with some
 * adjacent equal pair (D), or tuples without one (Q), lexicographic.
 */
class TupleBasis {
 public:
  TupleBasis(int order, int degree, Theory theory) : order_(order), degree_(degree), theory_(theory) {
    const TupleCode total = tuple_count(order, degree);
    position_.assign(total, -1);
    for (TupleCode c = 0; c < total; ++c) {
      auto t = decode_tuple(c, order, degree);
      bool deg = is_degenerate(t);
      bool keep = theory == Theory::R || (theory == Theory::D ? deg : !deg);
      if (keep) {
        position_[c] = static_cast<std::int64_t>(codes_.size());
        codes_.push_back(c);
      }
    }
  }

  int order() const noexcept { return order_; }
  int degree() const noexcept { return degree_; }
  Theory theory() const noexcept { return theory_; }
  std::size_t size() const noexcept { return codes_.size(); }
  TupleCode code(std::size_t pos) const { return codes_[pos]; }
  std::vector<int> tuple(std::size_t pos) const { return decode_tuple(codes_[pos], order_, degree_); }
  std::optional<std::size_t> position(TupleCode code) const {
    std::int64_t p = position_[code];
    if (p < 0) return std::nullopt;
    return static_cast<std::size_t>(p);
  }

 private:
  int order_, degree_;
  Theory theory_;
  std::vector<TupleCode> codes_;
  std::vector<std::int64_t> position_;
};

/**
 * Terms of the rack boundary of one tuple:
 *   d(x_1..x_n) = sum_{i=2}^{n} (-1)^i [ (x_1..^x_i..x_n) - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, .., x_n) ].
 * Zero for n <= 1.
 */
inline std::vector<std::pair<std::vector<int>, int>> boundary_terms(const Quandle& x, std::span<const int> t) {
  std::vector<std::pair<std::vector<int>, int>> out;
  const int n = static_cast<int>(t.size());
  if (n <= 1) return out;
  for (int i = 2; i <= n; ++i) {
    const int sign = (i % 2 == 0) ? 1 : -1;
    std::vector<int> drop, act;
    drop.reserve(n - 1);
    act.reserve(n - 1);
    const int xi = t[i - 1];
    for (int k = 1; k <= n; ++k) {
      if (k == i) continue;
      drop.push_back(t[k - 1]);
      act.push_back(k < i ? x.op(t[k - 1], xi) : t[k - 1]);
    }
    out.emplace_back(std::move(drop), sign);
    out.emplace_back(std::move(act), -sign);
  }
  return out;
}

namespace detail {

inline void check_limits(int order, int degree, const ComplexLimits& limits, std::size_t matrices = 1) {
  if (degree < 0) throw ValidationError("degree must be nonnegative");
  if (degree > limits.max_degree + 1)
    throw LimitError("degree " + std::to_string(degree) + " exceeds the supported bound");
  double rows = static_cast<double>(tuple_count(order, degree > 0 ? degree - 1 : 0));
  double cols = static_cast<double>(tuple_count(order, degree));
  double bytes = rows * cols * static_cast<double>(sizeof(BigInt)) * static_cast<double>(matrices) +
                 cols * 8.0 * 2.0;
  if (bytes > static_cast<double>(limits.memory_cap_bytes))
    throw LimitError("estimated memory " + std::to_string(static_cast<long long>(bytes / (1 << 20))) +
                     " MiB for degree " + std::to_string(degree) + " exceeds the configured cap");
}

}  // namespace detail

/**
 * Matrix of d_n : C_n^W -> C_{n-1}^W in the TupleBasis orders (columns are
 * degree-n generators). For Q the rack boundary is followed by the
 * projection that kills degenerate tuples.
 */
inline IntegerMatrix boundary_matrix(const Quandle& x, Theory theory, int n, const ComplexLimits& limits = {}) {
  detail::check_limits(x.order(), n, limits, 3);
  TupleBasis src(x.order(), n, theory);
  TupleBasis dst(x.order(), n > 0 ? n - 1 : 0, theory);
  if (n <= 0) return IntegerMatrix(dst.size(), src.size());
  IntegerMatrix m(dst.size(), src.size());
  if (n <= 1) return m;
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::map<TupleCode, int> net;
    for (auto& [face, sign] : boundary_terms(x, src.tuple(c))) net[encode_tuple(face, x.order())] += sign;
    for (auto [code, coeff] : net) {
      if (coeff == 0) continue;
      auto row = dst.position(code);
      if (!row) {
        if (theory == Theory::D) throw InternalError("boundary of a degenerate tuple left the degenerate subcomplex");
        continue;  // projected away (Q)
      }
      m(*row, c) += coeff;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Abelian group structure and (co)homology

/// Z^free_rank + Z_{d_1} + ... with d_i | d_{i+1}.
struct AbelianGroupStructure {
  int free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// Number of cyclic factors of order p (for prime p) in a finite group: the F_p-dimension of G/pG.
  std::size_t p_rank(std::int64_t p) const {
    std::size_t r = static_cast<std::size_t>(free_rank);
    for (const auto& d : torsion)
      if (d % p == 0) ++r;
    return r;
  }

  /// "0", "Z", "Z^2 + Z_2", "Z_2^3", "Z_3".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (free_rank > 0) out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (std::size_t i = 0; i < torsion.size();) {
      std::size_t j = i;
      while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
      if (!out.empty()) out += " + ";
      out += "Z_" + torsion[i].str();
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  bool operator==(const AbelianGroupStructure&) const = default;
};

/// Normalises a list of cyclic orders (entries 0 mean Z, 1 are dropped) into invariant factors.
inline AbelianGroupStructure abelian_group_from_orders(const std::vector<BigInt>& orders) {
  AbelianGroupStructure g;
  std::vector<BigInt> finite;
  for (const auto& d : orders) {
    if (d == 0)
      ++g.free_rank;
    else if (d != 1 && d != -1)
      finite.push_back(d < 0 ? BigInt(-d) : d);
  }
  if (!finite.empty()) {
    IntegerMatrix diag(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) diag(i, i) = finite[i];
    auto snf = smith_normal_form(diag, {false, false});
    for (auto& d : snf.invariant_factors())
      if (d != 1) g.torsion.push_back(d);
  }
  return g;
}

/**
 * Homology at the middle of  C_in --in--> C --out--> C_out,  i.e.
 * ker(out) / im(in), with coefficients Z (modulus 0) or Z/m.
 *
 * Over Z/m the kernel of `out` mod m is the lattice spanned by the columns
 * of V diag(k_i), k_i = m / gcd(d_i, m) (k_i = 1 beyond the rank), where
 * U out V = D. The image lattice im(in) + mZ^c is rewritten in that basis
 * and a second Smith form gives the quotient.
 */
inline AbelianGroupStructure homology_at(const IntegerMatrix& out, const IntegerMatrix& in, std::size_t dim,
                                         int modulus) {
  if (out.cols() != dim || in.rows() != dim) throw InternalError("homology_at: dimension mismatch");
  if (modulus < 0 || modulus == 1) {
    if (modulus == 1) return {};
    throw ValidationError("coefficient modulus must be 0 (integers) or >= 2");
  }
  if (modulus == 0) {
    auto so = smith_normal_form(out, {false, false});
    auto si = smith_normal_form(in, {false, false});
    AbelianGroupStructure g;
    g.free_rank = static_cast<int>(dim - so.rank - si.rank);
    for (const auto& d : si.invariant_factors())
      if (d != 1) g.torsion.push_back(d);
    return g;
  }
  const BigInt m = modulus;
  auto so = smith_normal_form(out, {false, true});
  std::vector<BigInt> k(dim, 1);
  for (std::size_t i = 0; i < so.rank; ++i) k[i] = m / boost::multiprecision::gcd(so.D(i, i), m);
  // relation matrix: columns are generators of im(in) + m Z^dim in the kernel basis
  IntegerMatrix rel(dim, in.cols() + dim);
  for (std::size_t c = 0; c < in.cols() + dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      BigInt s = 0;
      if (c < in.cols()) {
        for (std::size_t t = 0; t < dim; ++t)
          if (so.V_inv(r, t) != 0 && in(t, c) != 0) s += so.V_inv(r, t) * in(t, c);
      } else {
        s = so.V_inv(r, c - in.cols()) * m;
      }
      if (s % k[r] != 0) throw InternalError("image is not contained in the kernel lattice");
      rel(r, c) = s / k[r];
    }
  }
  auto sr = smith_normal_form(rel, {false, false});
  std::vector<BigInt> orders;
  for (std::size_t i = 0; i < dim; ++i) orders.push_back(i < sr.rank ? sr.D(i, i) : BigInt(0));
  auto g = abelian_group_from_orders(orders);
  if (g.free_rank != 0) throw InternalError("homology with finite coefficients has a free part");
  return g;
}

/// H_n^W(X; Z) for modulus 0, H_n^W(X; Z/m) otherwise.
inline AbelianGroupStructure homology(const Quandle& x, Theory theory, int n, int modulus = 0,
                                      const ComplexLimits& limits = {}) {
  if (n < 0 || n > limits.max_degree) throw LimitError("homology degree must be in 0.." + std::to_string(limits.max_degree));
  auto dn = boundary_matrix(x, theory, n, limits);
  auto dn1 = boundary_matrix(x, theory, n + 1, limits);
  return homology_at(dn, dn1, dn.cols(), modulus);
}

/// H^n_W(X; Z/m) (or Z for modulus 0), with delta the transpose of the boundary.
inline AbelianGroupStructure cohomology(const Quandle& x, Theory theory, int n, int modulus = 0,
                                        const ComplexLimits& limits = {}) {
  if (n < 0 || n > limits.max_degree) throw LimitError("cohomology degree must be in 0.." + std::to_string(limits.max_degree));
  auto dn = boundary_matrix(x, theory, n, limits);
  auto dn1 = boundary_matrix(x, theory, n + 1, limits);
  return homology_at(dn1.transpose(), dn.transpose(), dn.cols(), modulus);
}

// ---------------------------------------------------------------------------
// Chains and cochains

namespace detail {

inline std::int64_t normalise(std::int64_t v, int modulus) {
  if (modulus <= 0) return v;
  v %= modulus;
  return v < 0 ? v + modulus : v;
}

}  // namespace detail

/// A formal sum of n-tuples with coefficients in Z (modulus 0) or Z/m.
class Chain {
 public:
  Chain() = default;
  Chain(int degree, int modulus) : degree_(degree), modulus_(modulus) {}

  int degree() const noexcept { return degree_; }
  int modulus() const noexcept { return modulus_; }
  const std::map<std::vector<int>, std::int64_t>& terms() const noexcept { return terms_; }

  Chain& add(const std::vector<int>& tuple, std::int64_t coeff) {
    if (static_cast<int>(tuple.size()) != degree_) throw ValidationError("chain term has wrong degree");
    auto& c = terms_[tuple];
    c = detail::normalise(c + coeff, modulus_);
    if (c == 0) terms_.erase(tuple);
    return *this;
  }

  std::int64_t coefficient(const std::vector<int>& tuple) const {
    auto it = terms_.find(tuple);
    return it == terms_.end() ? 0 : it->second;
  }

  bool is_zero() const noexcept { return terms_.empty(); }

  /// Drops degenerate tuples: the image in C^Q.
  Chain quandle_projection() const {
    Chain out(degree_, modulus_);
    for (const auto& [t, c] : terms_)
      if (!is_degenerate(t)) out.terms_.emplace(t, c);
    return out;
  }

  Chain reduced(int modulus) const {
    Chain out(degree_, modulus);
    for (const auto& [t, c] : terms_) out.add(t, c);
    return out;
  }

  Chain operator+(const Chain& o) const {
    Chain out = *this;
    for (const auto& [t, c] : o.terms_) out.add(t, c);
    return out;
  }
  Chain operator-(const Chain& o) const {
    Chain out = *this;
    for (const auto& [t, c] : o.terms_) out.add(t, -c);
    return out;
  }
  Chain scaled(std::int64_t k) const {
    Chain out(degree_, modulus_);
    for (const auto& [t, c] : terms_) out.add(t, c * k);
    return out;
  }

  bool operator==(const Chain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

 private:
  int degree_ = 0;
  int modulus_ = 0;
  std::map<std::vector<int>, std::int64_t> terms_;
};

/// Boundary of a chain in theory R or (projected) Q.
inline Chain boundary(const Quandle& x, const Chain& z, Theory theory = Theory::Q) {
  Chain out(std::max(z.degree() - 1, 0), z.modulus());
  if (z.degree() <= 1) return out;
  for (const auto& [t, c] : z.terms()) {
    if (theory == Theory::Q && is_degenerate(t)) continue;
    for (auto& [face, sign] : boundary_terms(x, t)) {
      if (theory == Theory::Q && is_degenerate(face)) continue;
      out.add(face, sign * c);
    }
  }
  return out;
}

/// A function from n-tuples of a quandle of the given order to Z/m (modulus 0: Z),
/// stored densely in lexicographic tuple order.
class Cochain {
 public:
  Cochain() = default;
  Cochain(int order, int degree, int modulus)
      : order_(order), degree_(degree), modulus_(modulus), values_(tuple_count(order, degree), 0) {}

  int order() const noexcept { return order_; }
  int degree() const noexcept { return degree_; }
  int modulus() const noexcept { return modulus_; }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }

  std::int64_t operator()(std::span<const int> tuple) const { return values_[encode_tuple(tuple, order_)]; }
  std::int64_t at(TupleCode code) const { return values_[code]; }
  void set(std::span<const int> tuple, std::int64_t v) { values_[encode_tuple(tuple, order_)] = detail::normalise(v, modulus_); }
  void set_code(TupleCode code, std::int64_t v) { values_[code] = detail::normalise(v, modulus_); }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](std::int64_t v) { return v == 0; });
  }

  /// Vanishes on every tuple with an adjacent equal pair.
  bool is_quandle_cochain() const {
    for (TupleCode c = 0; c < values_.size(); ++c)
      if (values_[c] != 0 && is_degenerate(decode_tuple(c, order_, degree_))) return false;
    return true;
  }

  Cochain operator+(const Cochain& o) const { return combine(o, 1); }
  Cochain operator-(const Cochain& o) const { return combine(o, -1); }
  Cochain scaled(std::int64_t k) const {
    Cochain out = *this;
    for (auto& v : out.values_) v = detail::normalise(v * k, modulus_);
    return out;
  }

  bool operator==(const Cochain& o) const {
    return order_ == o.order_ && degree_ == o.degree_ && modulus_ == o.modulus_ && values_ == o.values_;
  }

 private:
  Cochain combine(const Cochain& o, int sign) const {
    if (order_ != o.order_ || degree_ != o.degree_ || modulus_ != o.modulus_)
      throw ValidationError("cochains are not compatible (order, degree or modulus differ)");
    Cochain out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = detail::normalise(values_[i] + sign * o.values_[i], modulus_);
    return out;
  }

  int order_ = 0, degree_ = 0, modulus_ = 0;
  std::vector<std::int64_t> values_;
};

/// (delta c)(x) = c(d x) on every (n+1)-tuple.
inline Cochain delta(const Quandle& x, const Cochain& c) {
  if (c.order() != x.order()) throw ValidationError("cochain order does not match the quandle");
  Cochain out(x.order(), c.degree() + 1, c.modulus());
  const TupleCode total = tuple_count(x.order(), c.degree() + 1);
  for (TupleCode code = 0; code < total; ++code) {
    auto t = decode_tuple(code, x.order(), c.degree() + 1);
    std::int64_t s = 0;
    for (auto& [face, sign] : boundary_terms(x, t)) s += sign * c(face);
    out.set_code(code, s);
  }
  return out;
}

/// Kronecker pairing: sum over tuples of chain coefficient times cochain value.
inline std::int64_t pairing(const Chain& z, const Cochain& c) {
  if (z.degree() != c.degree())
    throw ValidationError("pairing degree mismatch: chain degree " + std::to_string(z.degree()) + ", cochain degree " +
                          std::to_string(c.degree()));
  if (z.modulus() != 0 && c.modulus() != 0 && c.modulus() % z.modulus() != 0 && z.modulus() % c.modulus() != 0)
    throw ValidationError("pairing modulus mismatch");
  std::int64_t s = 0;
  for (const auto& [t, coeff] : z.terms()) {
    for (int v : t)
      if (v < 0 || v >= c.order()) throw ValidationError("chain tuple outside the cochain's quandle");
    s = detail::normalise(s + coeff * c(t), c.modulus());
  }
  return s;
}

/// Basis of Z^n_Q(X; F_p) in deterministic echelon order.
inline std::vector<Cochain> cocycle_space(const Quandle& x, int n, int p, const ComplexLimits& limits = {}) {
  if (!is_prime(p))
    throw ValidationError("cocycle_space needs a prime modulus; use cohomology() for Z/" + std::to_string(p));
  if (n < 1 || n > limits.max_degree) throw LimitError("cocycle degree out of range");
  auto delta_n = boundary_matrix(x, Theory::Q, n + 1, limits).transpose();
  TupleBasis basis(x.order(), n, Theory::Q);
  std::vector<Cochain> out;
  for (auto& v : nullspace_mod_p(delta_n, p)) {
    Cochain c(x.order(), n, p);
    for (std::size_t i = 0; i < v.size(); ++i) c.set_code(basis.code(i), v[i]);
    out.push_back(std::move(c));
  }
  return out;
}

/// dim B^n_Q(X; F_p) = rank of delta^{n-1}.
inline std::size_t coboundary_dimension(const Quandle& x, int n, int p, const ComplexLimits& limits = {}) {
  if (n < 1) return 0;
  return rank_mod_p(boundary_matrix(x, Theory::Q, n, limits), p);
}

/**
 * A quandle (n-1)-cochain eta with delta(eta) = c, if one exists. Solved
 * exactly over Z/m through a Smith decomposition, so any modulus >= 2 works.
 */
inline std::optional<Cochain> is_coboundary(const Quandle& x, const Cochain& c, const ComplexLimits& limits = {}) {
  if (c.modulus() < 2) throw ValidationError("is_coboundary needs a modulus >= 2");
  if (c.order() != x.order()) throw ValidationError("cochain order does not match the quandle");
  const int n = c.degree();
  if (n == 0) {
    if (c.is_zero()) return Cochain(x.order(), 0, c.modulus());
    return std::nullopt;
  }
  if (!c.is_quandle_cochain()) return std::nullopt;
  auto a = boundary_matrix(x, Theory::Q, n, limits).transpose();  // rows: n-tuples, cols: (n-1)-tuples
  TupleBasis rows(x.order(), n, Theory::Q);
  TupleBasis cols(x.order(), n - 1, Theory::Q);
  std::vector<BigInt> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) b[i] = c.at(rows.code(i));
  auto sol = solve_mod(a, b, c.modulus());
  if (!sol) return std::nullopt;
  Cochain eta(x.order(), n - 1, c.modulus());
  for (std::size_t j = 0; j < cols.size(); ++j) eta.set_code(cols.code(j), static_cast<std::int64_t>((*sol)[j]));
  if (!(delta(x, eta) == c)) throw InternalError("is_coboundary produced a wrong witness");
  return eta;
}

/// A quandle chain w with d w = z (theory Q), if z is a boundary.
inline std::optional<Chain> boundary_preimage(const Quandle& x, const Chain& z, const ComplexLimits& limits = {}) {
  if (z.modulus() < 2) throw ValidationError("boundary_preimage needs a modulus >= 2");
  auto a = boundary_matrix(x, Theory::Q, z.degree() + 1, limits);
  TupleBasis rows(x.order(), z.degree(), Theory::Q);
  TupleBasis cols(x.order(), z.degree() + 1, Theory::Q);
  std::vector<BigInt> b(rows.size(), 0);
  for (const auto& [t, c] : z.terms()) {
    auto pos = rows.position(encode_tuple(t, x.order()));
    if (!pos) continue;
    b[*pos] = c;
  }
  auto sol = solve_mod(a, b, z.modulus());
  if (!sol) return std::nullopt;
  Chain w(z.degree() + 1, z.modulus());
  for (std::size_t j = 0; j < cols.size(); ++j)
    if ((*sol)[j] != 0) w.add(cols.tuple(j), static_cast<std::int64_t>((*sol)[j]));
  return w;
}

/// The 3-cocycle of R_3 with values in Z/3 equal to 1 on
/// (0,1,2), (0,2,1), (1,0,1), (2,0,1), (2,0,2), (1,0,2) and 0 elsewhere.
inline Cochain xi_cocycle() {
  Cochain c(3, 3, 3);
  static const int support[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 1}, {2, 0, 1}, {2, 0, 2}, {1, 0, 2}};
  for (const auto& t : support) c.set(std::vector<int>(t, t + 3), 1);
  return c;
}

}  // namespace qcoc

#endif

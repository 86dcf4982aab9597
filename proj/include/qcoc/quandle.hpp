#ifndef QCOC_QUANDLE_HPP
#define QCOC_QUANDLE_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qcoc/error.hpp"

namespace qcoc {

using Table = std::vector<std::vector<int>>;

/// Result of checking the three quandle axioms on an operation table.
struct AxiomReport {
  struct Failure {
    int axiom = 0;                // 1, 2 or 3
    std::vector<int> witness;     // lexicographically first counterexample
    std::string message;
  };

  bool valid() const noexcept { return failures.empty(); }
  bool holds(int axiom) const {
    return std::none_of(failures.begin(), failures.end(), [&](const Failure& f) { return f.axiom == axiom; });
  }
  std::string to_string() const;

  std::vector<Failure> failures;
};

/**
 * Checks axioms I-III on a square table whose entry [i][j] is i*j.
 *
 * Throws ValidationError when the table is not square or has entries
 * outside 0..n-1; axiom failures are reported, not thrown.
 */
inline AxiomReport check_quandle(const Table& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ValidationError("quandle table is empty");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw ValidationError("quandle table is not square (row " + std::to_string(i) + ")");
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n)
        throw ValidationError("table entry [" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                              std::to_string(table[i][j]) + " is out of range");
    }
  }
  AxiomReport report;
  for (int i = 0; i < n; ++i) {
    if (table[i][i] != i) {
      report.failures.push_back({1, {i}, "axiom I fails at i=" + std::to_string(i) + ": " + std::to_string(i) + "*" +
                                             std::to_string(i) + "=" + std::to_string(table[i][i])});
      break;
    }
  }
  for (int j = 0; j < n && report.holds(2); ++j) {
    std::vector<int> first(n, -1);
    for (int i = 0; i < n; ++i) {
      int v = table[i][j];
      if (first[v] >= 0) {
        report.failures.push_back({2, {first[v], i, j},
                                   "axiom II fails: " + std::to_string(first[v]) + "*" + std::to_string(j) + " = " +
                                       std::to_string(i) + "*" + std::to_string(j) + " = " + std::to_string(v)});
        break;
      }
      first[v] = i;
    }
  }
  for (int i = 0; i < n && report.holds(3); ++i) {
    for (int j = 0; j < n && report.holds(3); ++j) {
      for (int k = 0; k < n; ++k) {
        int lhs = table[table[i][j]][k];
        int rhs = table[table[i][k]][table[j][k]];
        if (lhs != rhs) {
          report.failures.push_back({3, {i, j, k},
                                     "axiom III fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                         std::to_string(k) + "): (i*j)*k=" + std::to_string(lhs) +
                                         " but (i*k)*(j*k)=" + std::to_string(rhs)});
          break;
        }
      }
    }
  }
  return report;
}

inline std::string AxiomReport::to_string() const {
  std::ostringstream out;
  for (int axiom = 1; axiom <= 3; ++axiom) {
    out << "axiom " << (axiom == 1 ? "I" : axiom == 2 ? "II" : "III") << ": ";
    auto it = std::find_if(failures.begin(), failures.end(), [&](const Failure& f) { return f.axiom == axiom; });
    if (it == failures.end()) {
      out << "pass\n";
    } else {
      out << "FAIL (" << it->message << ")\n";
    }
  }
  out << (valid() ? "valid quandle\n" : "not a quandle\n");
  return out.str();
}

/**
 * A finite quandle on {0, ..., n-1}. Immutable; construction validates the
 * axioms unless the unchecked factory is used.
 */
class Quandle {
 public:
  Quandle() = default;

  static Quandle from_table(const Table& table, std::string label = {}) {
    AxiomReport report = check_quandle(table);
    if (!report.valid()) throw ValidationError(report.failures.front().message);
    return unchecked(table, std::move(label));
  }

  /// Skips the axiom check (entries must still be in range). Axiom II must hold
  /// for right division to be meaningful.
  static Quandle unchecked(const Table& table, std::string label = {}) {
    Quandle q;
    q.n_ = static_cast<int>(table.size());
    q.label_ = std::move(label);
    q.table_.resize(static_cast<std::size_t>(q.n_) * q.n_);
    q.rdiv_.assign(static_cast<std::size_t>(q.n_) * q.n_, -1);
    for (int i = 0; i < q.n_; ++i) {
      if (static_cast<int>(table[i].size()) != q.n_) throw ValidationError("quandle table is not square");
      for (int j = 0; j < q.n_; ++j) {
        int v = table[i][j];
        if (v < 0 || v >= q.n_) throw ValidationError("quandle table entry out of range");
        q.table_[i * q.n_ + j] = v;
        q.rdiv_[v * q.n_ + j] = i;
      }
    }
    return q;
  }

  int order() const noexcept { return n_; }
  int op(int a, int b) const { return table_[a * n_ + b]; }
  /// The unique c with c*b == a.
  int rdiv(int a, int b) const { return rdiv_[a * n_ + b]; }
  const std::string& label() const noexcept { return label_; }
  Quandle with_label(std::string label) const {
    Quandle q = *this;
    q.label_ = std::move(label);
    return q;
  }

  Table table() const {
    Table t(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t[i][j] = op(i, j);
    return t;
  }

  bool is_trivial() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (op(i, j) != i) return false;
    return true;
  }

  bool operator==(const Quandle& o) const { return n_ == o.n_ && table_ == o.table_; }

 private:
  int n_ = 0;
  std::vector<int> table_;
  std::vector<int> rdiv_;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Families

inline Quandle trivial_quandle(int n) {
  if (n < 1) throw ValidationError("trivial quandle needs n >= 1");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = i;
  return Quandle::from_table(t, "T" + std::to_string(n));
}

/// R_n: i*j = 2j - i mod n.
inline Quandle dihedral_quandle(int n) {
  if (n < 1) throw ValidationError("dihedral quandle needs n >= 1");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = ((2 * j - i) % n + n) % n;
  return Quandle::from_table(t, "R" + std::to_string(n));
}

namespace detail {

inline int mod_inverse(int a, int m) {
  int t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
  while (newr != 0) {
    int q = r / newr;
    t = t - q * newt;
    std::swap(t, newt);
    r = r - q * newr;
    std::swap(r, newr);
  }
  if (r != 1) return -1;
  return (t % m + m) % m;
}

}  // namespace detail

/**
 * The Alexander quandle Z_m[T, T^-1]/(h(T)) with a*b = Ta + (1-T)b.
 *
 * `h` lists coefficients constant term first; leading zeros in low degree
 * are factored out as powers of the unit T. Elements are the residues of
 * degree < deg h, indexed lexicographically on (c_0, c_1, ...), i.e. c_0 is
 * the most significant digit.
 */
inline Quandle alexander_quandle(int m, std::vector<int> h) {
  if (m < 2) throw ValidationError("alexander quandle modulus must be >= 2");
  for (int& c : h) c = ((c % m) + m) % m;
  while (!h.empty() && h.back() == 0) h.pop_back();
  std::size_t low = 0;
  while (low < h.size() && h[low] == 0) ++low;
  h.erase(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(low));
  if (h.size() < 2) throw ValidationError("alexander polynomial must have degree >= 1 after normalisation");
  const int lead_inv = detail::mod_inverse(h.back(), m);
  if (lead_inv < 0 || detail::mod_inverse(h.front(), m) < 0)
    throw ValidationError("alexander polynomial needs unit leading and trailing coefficients mod " + std::to_string(m));
  for (int& c : h) c = (c * lead_inv) % m;
  const int d = static_cast<int>(h.size()) - 1;
  long long size = 1;
  for (int i = 0; i < d; ++i) {
    size *= m;
    if (size > 4096) throw LimitError("alexander quandle larger than 4096 elements");
  }
  const int n = static_cast<int>(size);

  auto decode = [&](int idx) {
    std::vector<int> c(d);
    for (int i = d - 1; i >= 0; --i) {
      c[i] = idx % m;
      idx /= m;
    }
    return c;
  };
  auto encode = [&](const std::vector<int>& c) {
    int idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * m + c[i];
    return idx;
  };
  auto times_t = [&](const std::vector<int>& c) {
    std::vector<int> r(d, 0);
    for (int i = 0; i + 1 < d; ++i) r[i + 1] = c[i];
    int top = c[d - 1];
    for (int i = 0; i < d; ++i) r[i] = ((r[i] - top * h[i]) % m + m) % m;
    return r;
  };

  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    auto ca = decode(a);
    for (int b = 0; b < n; ++b) {
      auto cb = decode(b);
      std::vector<int> diff(d);
      for (int i = 0; i < d; ++i) diff[i] = ((ca[i] - cb[i]) % m + m) % m;
      auto r = times_t(diff);
      for (int i = 0; i < d; ++i) r[i] = (r[i] + cb[i]) % m;
      t[a][b] = encode(r);
    }
  }
  std::string label = "Z" + std::to_string(m) + "[T]/(";
  for (int i = d; i >= 0; --i) {
    if (h[i] == 0) continue;
    if (label.back() != '(') label += "+";
    if (i == 0 || h[i] != 1) label += std::to_string(h[i]);
    if (i >= 1) label += "T";
    if (i >= 2) label += "^" + std::to_string(i);
  }
  label += ")";
  return Quandle::from_table(t, label);
}

/**
 * The n-fold conjugation quandle a*b = b^-n a b^n of a finite group given by
 * its multiplication table (entry [i][j] = i.j).
 */
inline Quandle conjugation_quandle(const Table& group, int n_fold = 1, std::string label = {}) {
  const int n = static_cast<int>(group.size());
  if (n == 0) throw ValidationError("group table is empty");
  for (const auto& row : group) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw ValidationError("group table entry out of range");
  }
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = group[i][j] == j && group[j][i] == j;
    if (ok) e = i;
  }
  if (e < 0) throw ValidationError("group table has no identity");
  std::vector<int> inv(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (group[i][j] == e && group[j][i] == e) inv[i] = j;
    if (inv[i] < 0) throw ValidationError("group element " + std::to_string(i) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (group[group[a][b]][c] != group[a][group[b][c]])
          throw ValidationError("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                "," + std::to_string(c) + ")");
  auto power = [&](int g, int k) {
    int base = k < 0 ? inv[g] : g;
    int r = e;
    for (int i = 0; i < std::abs(k); ++i) r = group[r][base];
    return r;
  };
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = group[group[power(b, -n_fold)][a]][power(b, n_fold)];
  return Quandle::from_table(t, label.empty() ? "Conj" + std::to_string(n) : std::move(label));
}

/// The subquandle on `elements` (must be closed under * and right division),
/// renumbered in the given order.
inline Quandle subquandle(const Quandle& x, const std::vector<int>& elements, std::string label = {}) {
  std::map<int, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<int>(i);
  Table t(elements.size(), std::vector<int>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      auto it = index.find(x.op(elements[i], elements[j]));
      if (it == index.end()) throw ValidationError("subset is not closed under the quandle operation");
      t[i][j] = it->second;
    }
  }
  return Quandle::from_table(t, std::move(label));
}

/// Multiplication table of the quaternion group, elements ordered
/// 1, -1, i, -i, j, -j, k, -k.
inline Table quaternion_group_table() {
  // unit index u in {0:1, 1:i, 2:j, 3:k}, element = 2*u + (negative ? 1 : 0)
  static const int unit_product[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  Table t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int sign = unit_sign[ua][ub] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
      t[a][b] = 2 * unit_product[ua][ub] + (sign < 0 ? 1 : 0);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// A map between finite quandles, stored as the image of each element.
struct QuandleHom {
  std::vector<int> map;

  bool bijective(int cod_order) const {
    if (static_cast<int>(map.size()) != cod_order) return false;
    std::vector<bool> seen(cod_order, false);
    for (int v : map) {
      if (seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
  bool operator==(const QuandleHom&) const = default;
  auto operator<=>(const QuandleHom&) const = default;
};

inline bool is_homomorphism(const Quandle& dom, const Quandle& cod, std::span<const int> map) {
  if (static_cast<int>(map.size()) != dom.order()) return false;
  for (int v : map)
    if (v < 0 || v >= cod.order()) return false;
  for (int a = 0; a < dom.order(); ++a)
    for (int b = 0; b < dom.order(); ++b)
      if (map[dom.op(a, b)] != cod.op(map[a], map[b])) return false;
  return true;
}

namespace detail {

// Assigns dom element `a` -> `v` and closes under f(x*y) = f(x)*f(y).
// Returns false on a conflict (or a repeated value when `injective`).
inline bool assign_and_propagate(const Quandle& dom, const Quandle& cod, std::vector<int>& f, std::vector<int>& used,
                                 int a, int v, bool injective) {
  std::vector<std::pair<int, int>> queue{{a, v}};
  std::vector<int> assigned;
  while (!queue.empty()) {
    auto [x, fx] = queue.back();
    queue.pop_back();
    if (f[x] >= 0) {
      if (f[x] != fx) return false;
      continue;
    }
    if (injective) {
      if (used[fx] >= 0) return false;
      used[fx] = x;
    }
    f[x] = fx;
    assigned.push_back(x);
    for (int y = 0; y < dom.order(); ++y) {
      if (f[y] < 0) continue;
      queue.push_back({dom.op(x, y), cod.op(fx, f[y])});
      queue.push_back({dom.op(y, x), cod.op(f[y], fx)});
      queue.push_back({dom.rdiv(x, y), cod.rdiv(fx, f[y])});
      queue.push_back({dom.rdiv(y, x), cod.rdiv(f[y], fx)});
    }
  }
  return true;
}

template <class Accept>
void enumerate_homs(const Quandle& dom, const Quandle& cod, bool injective, std::vector<int> f, std::vector<int> used,
                    Accept& accept, bool& stop) {
  int a = 0;
  while (a < dom.order() && f[a] >= 0) ++a;
  if (a == dom.order()) {
    stop = !accept(f);
    return;
  }
  for (int v = 0; v < cod.order() && !stop; ++v) {
    std::vector<int> f2 = f;
    std::vector<int> used2 = used;
    if (!assign_and_propagate(dom, cod, f2, used2, a, v, injective)) continue;
    enumerate_homs(dom, cod, injective, std::move(f2), std::move(used2), accept, stop);
  }
}

// Per-element isomorphism invariant: cycle type of x -> x*a, and the number
// of b with a*b == a.
inline std::vector<int> element_profile(const Quandle& q, int a) {
  const int n = q.order();
  std::vector<int> cycles;
  std::vector<bool> seen(n, false);
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (int y = x; !seen[y]; y = q.op(y, a)) {
      seen[y] = true;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end());
  int stab = 0;
  for (int b = 0; b < n; ++b) stab += q.op(a, b) == a;
  cycles.push_back(-stab);
  return cycles;
}

}  // namespace detail

/// All homomorphisms dom -> cod in lexicographic order of their map arrays.
inline std::vector<QuandleHom> quandle_homs(const Quandle& dom, const Quandle& cod) {
  std::vector<QuandleHom> out;
  auto accept = [&](const std::vector<int>& f) {
    out.push_back({f});
    return true;
  };
  bool stop = false;
  detail::enumerate_homs(dom, cod, false, std::vector<int>(dom.order(), -1), std::vector<int>(cod.order(), -1), accept,
                         stop);
  std::sort(out.begin(), out.end());
  return out;
}

/// A bijective homomorphism x -> y, if one exists.
inline std::optional<QuandleHom> are_isomorphic(const Quandle& x, const Quandle& y) {
  if (x.order() != y.order()) return std::nullopt;
  const int n = x.order();
  std::vector<std::vector<int>> px(n), py(n);
  for (int a = 0; a < n; ++a) {
    px[a] = detail::element_profile(x, a);
    py[a] = detail::element_profile(y, a);
  }
  {
    auto sx = px, sy = py;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return std::nullopt;
  }
  std::optional<QuandleHom> found;
  auto accept = [&](const std::vector<int>& f) {
    for (int a = 0; a < n; ++a)
      if (px[a] != py[f[a]]) return true;
    found = QuandleHom{f};
    return false;
  };
  bool stop = false;
  // Branch only on profile-compatible images; propagation handles the rest.
  std::vector<int> f(n, -1), used(n, -1);
  struct Search {
    const Quandle& x;
    const Quandle& y;
    const std::vector<std::vector<int>>& px;
    const std::vector<std::vector<int>>& py;
    decltype(accept)& acc;
    bool& stop;
    void run(std::vector<int> f, std::vector<int> used) {
      int a = 0;
      while (a < x.order() && f[a] >= 0) ++a;
      if (a == x.order()) {
        stop = !acc(f);
        return;
      }
      for (int v = 0; v < y.order() && !stop; ++v) {
        if (px[a] != py[v]) continue;
        auto f2 = f;
        auto u2 = used;
        if (!detail::assign_and_propagate(x, y, f2, u2, a, v, true)) continue;
        run(std::move(f2), std::move(u2));
      }
    }
  } search{x, y, px, py, accept, stop};
  search.run(std::move(f), std::move(used));
  return found;
}

// ---------------------------------------------------------------------------
// .qnd text format: "quandle n" followed by n rows of n integers.

inline Quandle parse_qnd(std::istream& in, bool unchecked = false, std::string label = {}) {
  std::string word;
  int n = 0;
  if (!(in >> word) || word != "quandle") throw ParseError("expected header 'quandle n'");
  if (!(in >> n) || n < 1) throw ParseError("bad quandle order in header");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> t[i][j]))
        throw ParseError("quandle table truncated at row " + std::to_string(i) + ", column " + std::to_string(j));
  if (in >> word) throw ParseError("trailing content after quandle table: '" + word + "'");
  return unchecked ? Quandle::unchecked(t, std::move(label)) : Quandle::from_table(t, std::move(label));
}

inline Quandle parse_qnd(const std::string& text, bool unchecked = false, std::string label = {}) {
  std::istringstream in(text);
  return parse_qnd(in, unchecked, std::move(label));
}

inline Quandle read_qnd(const std::string& path, bool unchecked = false) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open quandle file '" + path + "'");
  return parse_qnd(in, unchecked, path);
}

/// Reads a .qnd file's table without any axiom check (for reporting).
inline Table read_qnd_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open quandle file '" + path + "'");
  std::string word;
  int n = 0;
  if (!(in >> word) || word != "quandle") throw ParseError("expected header 'quandle n'");
  if (!(in >> n) || n < 1) throw ParseError("bad quandle order in header");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> t[i][j])) throw ParseError("quandle table truncated");
  return t;
}

inline std::string format_qnd(const Quandle& q) {
  std::ostringstream out;
  out << "quandle " << q.order() << "\n";
  for (int i = 0; i < q.order(); ++i) {
    for (int j = 0; j < q.order(); ++j) out << (j ? " " : "") << q.op(i, j);
    out << "\n";
  }
  return out.str();
}

}  // namespace qcoc

#endif

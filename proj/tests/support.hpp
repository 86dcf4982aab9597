#ifndef QCOC_TESTS_SUPPORT_HPP
#define QCOC_TESTS_SUPPORT_HPP

// Independent oracles shared by the test binaries. Nothing here calls the
// library's linear algebra or coloring search.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qcoc/qcoc.hpp"

#ifndef QCOC_DATA_DIR
#define QCOC_DATA_DIR "data"
#endif

namespace oracle {

inline std::string data(const std::string& name) { return std::string(QCOC_DATA_DIR) + "/" + name; }

inline qcoc::Quandle bundled(const std::string& name) { return qcoc::read_qnd(data(name)); }

inline std::vector<std::string> bundled_quandle_files() { return {"r3.qnd", "r4.qnd", "t2.qnd", "t3.qnd", "x4.qnd"}; }

/// All n-tuples over {0..k-1} in lexicographic order.
inline std::vector<std::vector<int>> all_tuples(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(n, 0);
  while (true) {
    out.push_back(t);
    int i = n - 1;
    while (i >= 0 && ++t[i] == k) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline std::vector<std::vector<int>> nondegenerate_tuples(int k, int n) {
  std::vector<std::vector<int>> out;
  for (auto& t : all_tuples(k, n)) {
    bool deg = false;
    for (int i = 0; i + 1 < n; ++i) deg |= t[i] == t[i + 1];
    if (!deg) out.push_back(t);
  }
  return out;
}

/// Boundary of one generator written straight from the defining formula, as (tuple, sign) pairs.
inline std::vector<std::pair<std::vector<int>, int>> boundary_of(const qcoc::Quandle& x, const std::vector<int>& t) {
  std::vector<std::pair<std::vector<int>, int>> out;
  const int n = static_cast<int>(t.size());
  if (n < 2) return out;
  for (int i = 2; i <= n; ++i) {
    int sign = (i % 2 == 0) ? 1 : -1;
    std::vector<int> left, right;
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      left.push_back(t[j - 1]);
      right.push_back(j < i ? x.op(t[j - 1], t[i - 1]) : t[j - 1]);
    }
    out.push_back({left, sign});
    out.push_back({right, -sign});
  }
  return out;
}

/// Matrix of the quandle boundary C^Q_n -> C^Q_{n-1} over F_p, rows indexed by (n-1)-tuples.
inline std::vector<std::vector<int>> quandle_boundary_mod_p(const qcoc::Quandle& x, int n, int p) {
  auto rows = nondegenerate_tuples(x.order(), n - 1);
  auto cols = nondegenerate_tuples(x.order(), n);
  std::map<std::vector<int>, int> index;
  for (std::size_t r = 0; r < rows.size(); ++r) index[rows[r]] = static_cast<int>(r);
  std::vector<std::vector<int>> m(rows.size(), std::vector<int>(cols.size(), 0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto& [t, s] : boundary_of(x, cols[c])) {
      auto it = index.find(t);
      if (it == index.end()) continue;
      int& v = m[it->second][c];
      v = ((v + s) % p + p) % p;
    }
  return m;
}

inline int inverse_mod(int a, int p) {
  for (int b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

inline int rank_mod(std::vector<std::vector<int>> m, int p) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] % p) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    int inv = inverse_mod(m[rank][c], p);
    for (int& v : m[rank]) v = v * inv % p;
    for (int r = 0; r < rows; ++r)
      if (r != rank && m[r][c]) {
        int f = m[r][c];
        for (int k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
      }
    ++rank;
  }
  return rank;
}

/// dim H^n_Q(X; F_p) = dim C_n - rank d_n - rank d_{n+1}.
inline int quandle_cohomology_dim(const qcoc::Quandle& x, int n, int p) {
  int cn = static_cast<int>(nondegenerate_tuples(x.order(), n).size());
  int r_in = n >= 2 ? rank_mod(quandle_boundary_mod_p(x, n, p), p) : 0;
  int r_out = rank_mod(quandle_boundary_mod_p(x, n + 1, p), p);
  return cn - r_in - r_out;
}

/// Colorings found by trying every assignment of quandle elements to arcs.
inline std::vector<std::vector<int>> brute_colorings(const qcoc::Diagram& d, const qcoc::Quandle& x) {
  std::vector<std::vector<int>> out;
  for (auto& a : all_tuples(x.order(), d.arc_count)) {
    bool ok = true;
    for (const auto& c : d.crossings) ok &= a[c.target_under_arc] == x.op(a[c.source_under_arc], a[c.over_arc]);
    if (ok) out.push_back(a);
  }
  return out;
}

/// Number of Fox 3-colorings from the crossing relations 2*over = in + out over F_3.
inline int fox3_count(const qcoc::Diagram& d) {
  std::vector<std::vector<int>> rows;
  for (const auto& c : d.crossings) {
    std::vector<int> r(d.arc_count, 0);
    r[c.over_arc] = (r[c.over_arc] + 2) % 3;
    r[c.under_in_arc] = (r[c.under_in_arc] + 2) % 3;
    r[c.under_out_arc] = (r[c.under_out_arc] + 2) % 3;
    rows.push_back(r);
  }
  int dim = d.arc_count - (rows.empty() ? 0 : rank_mod(rows, 3));
  int count = 1;
  for (int i = 0; i < dim; ++i) count *= 3;
  return count;
}

/// Invariant computed from brute-force colorings and crossing-by-crossing weights.
inline std::map<int, std::uint64_t> brute_cocycle_invariant(const qcoc::Diagram& d, const qcoc::Quandle& x,
                                                            const qcoc::Cochain& phi) {
  std::map<int, std::uint64_t> v;
  const int m = phi.modulus();
  for (auto& a : brute_colorings(d, x)) {
    long long w = 0;
    for (const auto& c : d.crossings) w += c.sign * phi(std::vector<int>{a[c.source_under_arc], a[c.over_arc]});
    ++v[static_cast<int>(((w % m) + m) % m)];
  }
  return v;
}

/// Shadow invariant by brute force over arc and region colorings.
inline std::map<int, std::uint64_t> brute_shadow_invariant(const qcoc::Diagram& d, const qcoc::Quandle& x,
                                                           const qcoc::Cochain& theta) {
  std::map<int, std::uint64_t> v;
  const int m = theta.modulus();
  for (auto& a : brute_colorings(d, x))
    for (auto& r : all_tuples(x.order(), d.region_count)) {
      bool ok = true;
      for (const auto& e : d.edges) ok &= r[e.left_region] == x.op(r[e.right_region], a[e.arc]);
      if (!ok) continue;
      long long w = 0;
      for (const auto& c : d.crossings)
        w += c.sign * theta(std::vector<int>{r[c.source_region], a[c.source_under_arc], a[c.over_arc]});
      ++v[static_cast<int>(((w % m) + m) % m)];
    }
  return v;
}

/// "9 + 18t" style value as a map exponent -> coefficient.
inline std::map<int, std::uint64_t> value(std::initializer_list<std::pair<int, std::uint64_t>> terms) {
  std::map<int, std::uint64_t> v;
  for (auto [e, c] : terms) v[e] += c;
  return v;
}

/// Minimal CSV reader for the bundled data: fields may be double-quoted.
inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"')
        quoted = !quoted;
      else if (ch == ',' && !quoted)
        fields.emplace_back();
      else
        fields.back() += ch;
    }
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace oracle

#endif

#ifndef QCOC_ABELIAN_GROUP_HPP
#define QCOC_ABELIAN_GROUP_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcoc/error.hpp"

namespace qcoc {

/**
 * A finite abelian group Z_{m_1} x ... x Z_{m_r}, written additively.
 *
 * Elements are addressed by a single index in mixed radix with the first
 * factor most significant, so for a cyclic group the index is the residue
 * itself. The empty factor list is the trivial group.
 */
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    for (int m : orders_) {
      if (m < 2) throw ValidationError("cyclic factor orders must be >= 2, got " + std::to_string(m));
    }
    order_ = 1;
    for (int m : orders_) {
      if (order_ > (1 << 24) / m) throw LimitError("abelian group too large");
      order_ *= m;
    }
  }

  static FiniteAbelianGroup cyclic(int m) { return FiniteAbelianGroup({m}); }

  /// Parses "2", "4", "2,2"; "0", "1" and "" denote the trivial group.
  static FiniteAbelianGroup parse(std::string_view text) {
    std::vector<int> orders;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
      std::size_t b = item.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      std::size_t used = 0;
      int m = 0;
      try {
        m = std::stoi(item.substr(b), &used);
      } catch (const std::exception&) {
        throw ParseError("bad cyclic order '" + item + "' in group '" + std::string(text) + "'");
      }
      if (item.find_first_not_of(" \t", b + used) != std::string::npos)
        throw ParseError("bad cyclic order '" + item + "' in group '" + std::string(text) + "'");
      if (m == 1 || m == 0) continue;
      orders.push_back(m);
    }
    return FiniteAbelianGroup(std::move(orders));
  }

  const std::vector<int>& orders() const noexcept { return orders_; }
  int order() const noexcept { return order_; }
  int rank() const noexcept { return static_cast<int>(orders_.size()); }
  bool is_cyclic() const noexcept { return orders_.size() <= 1; }
  bool is_trivial() const noexcept { return orders_.empty(); }

  int exponent() const {
    int e = 1;
    for (int m : orders_) e = std::lcm(e, m);
    return e;
  }

  std::vector<int> decode(int index) const {
    std::vector<int> c(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
      c[i] = index % orders_[i];
      index /= orders_[i];
    }
    return c;
  }

  int encode(std::span<const int> components) const {
    if (components.size() != orders_.size()) throw ValidationError("group element has wrong number of components");
    int index = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      int v = components[i] % orders_[i];
      if (v < 0) v += orders_[i];
      index = index * orders_[i] + v;
    }
    return index;
  }

  int add(int a, int b) const {
    if (orders_.size() == 1) return (a + b) % order_;
    auto x = decode(a);
    auto y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return encode(x);
  }

  int neg(int a) const {
    if (orders_.size() == 1) return (order_ - a) % order_;
    auto x = decode(a);
    for (int& v : x) v = -v;
    return encode(x);
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  int scale(int a, long long k) const {
    auto x = decode(a);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<int>((x[i] * (k % orders_[i])) % orders_[i]);
    return encode(x);
  }

  std::string to_string() const {
    if (orders_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) s += " + ";
      s += "Z_" + std::to_string(orders_[i]);
    }
    return s;
  }

  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  std::vector<int> orders_;
  int order_ = 1;
};

/**
 * An element of the group ring Z[A] with nonnegative coefficients, stored
 * as element index -> multiplicity. Invariant values such as "9 + 18t"
 * live here.
 */
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(FiniteAbelianGroup group) : group_(std::move(group)) {}

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const std::map<int, std::uint64_t>& terms() const noexcept { return terms_; }

  void add(int element, std::uint64_t count = 1) {
    if (count == 0) return;
    terms_[element] += count;
  }

  void merge(const GroupRingElement& other) {
    for (auto [e, c] : other.terms_) add(e, c);
  }

  std::uint64_t coefficient(int element) const {
    auto it = terms_.find(element);
    return it == terms_.end() ? 0 : it->second;
  }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto [e, c] : terms_) s += c;
    return s;
  }

  /// Image under t^a -> t^{-a}; the effect of mirroring a diagram.
  GroupRingElement negated() const {
    GroupRingElement out(group_);
    for (auto [e, c] : terms_) out.add(group_.neg(e), c);
    return out;
  }

  bool operator==(const GroupRingElement& o) const { return group_ == o.group_ && terms_ == o.terms_; }

 private:
  FiniteAbelianGroup group_;
  std::map<int, std::uint64_t> terms_;
};

namespace detail {

inline std::string monomial(const FiniteAbelianGroup& group, int element) {
  if (group.is_cyclic()) {
    if (element == 1) return "t";
    return "t^" + std::to_string(element);
  }
  auto comps = group.decode(element);
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i] == 0) continue;
    if (!out.empty()) out += "·";
    out += "t" + std::to_string(i + 1);
    if (comps[i] != 1) out += "^" + std::to_string(comps[i]);
  }
  return out;
}

}  // namespace detail

/// Canonical text: ascending exponents, exponent-0 term as a bare integer, e.g. "9 + 18t^2".
inline std::string groupring_format(const GroupRingElement& v) {
  if (v.terms().empty()) return "0";
  std::string out;
  for (auto [e, c] : v.terms()) {
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += detail::monomial(v.group(), e);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace qcoc

#endif

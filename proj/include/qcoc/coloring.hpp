#ifndef QCOC_COLORING_HPP
#define QCOC_COLORING_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "qcoc/abelian_group.hpp"
#include "qcoc/chain_complex.hpp"
#include "qcoc/diagram.hpp"
#include "qcoc/error.hpp"
#include "qcoc/quandle.hpp"

namespace qcoc {

/// Arc id -> quandle element.
struct Coloring {
  std::vector<int> arcs;
  auto operator<=>(const Coloring&) const = default;
};

/// A coloring together with region id -> quandle element.
struct ShadowColoring {
  std::vector<int> arcs;
  std::vector<int> regions;
  auto operator<=>(const ShadowColoring&) const = default;
};

/// True when color(r2) = color(r1) * color(over) at every crossing.
inline bool is_coloring(const Diagram& d, const Quandle& x, const std::vector<int>& arcs) {
  if (static_cast<int>(arcs.size()) != d.arc_count) return false;
  for (int c : arcs)
    if (c < 0 || c >= x.order()) return false;
  for (const auto& c : d.crossings)
    if (arcs[c.target_under_arc] != x.op(arcs[c.source_under_arc], arcs[c.over_arc])) return false;
  return true;
}

/// True when color(left) = color(right) * color(arc) across every edge.
inline bool is_shadow_coloring(const Diagram& d, const Quandle& x, const ShadowColoring& sc) {
  if (!is_coloring(d, x, sc.arcs) || static_cast<int>(sc.regions.size()) != d.region_count) return false;
  for (int r : sc.regions)
    if (r < 0 || r >= x.order()) return false;
  for (const auto& e : d.edges)
    if (sc.regions[e.left_region] != x.op(sc.regions[e.right_region], sc.arcs[e.arc])) return false;
  return true;
}

namespace detail {

class ColoringSearch {
 public:
  ColoringSearch(const Diagram& d, const Quandle& x) : d_(d), x_(x), color_(d.arc_count, -1) {
    touching_.resize(d.arc_count);
    for (int k = 0; k < static_cast<int>(d.crossings.size()); ++k) {
      const auto& c = d.crossings[k];
      touching_[c.over_arc].push_back(k);
      touching_[c.source_under_arc].push_back(k);
      if (c.target_under_arc != c.source_under_arc) touching_[c.target_under_arc].push_back(k);
    }
  }

  std::vector<Coloring> run() {
    search();
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  // assigns arc := v and propagates; records assigned arcs in `trail`
  bool assign(int arc, int v, std::vector<int>& trail) {
    std::vector<int> stack;
    auto set = [&](int a, int val) {
      if (color_[a] == val) return true;
      if (color_[a] >= 0) return false;
      color_[a] = val;
      trail.push_back(a);
      stack.push_back(a);
      return true;
    };
    if (!set(arc, v)) return false;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int k : touching_[a]) {
        const auto& c = d_.crossings[k];
        int y = color_[c.over_arc], s = color_[c.source_under_arc], t = color_[c.target_under_arc];
        if (y < 0) continue;
        if (s >= 0) {
          if (!set(c.target_under_arc, x_.op(s, y))) return false;
        } else if (t >= 0) {
          if (!set(c.source_under_arc, x_.rdiv(t, y))) return false;
        }
      }
    }
    return true;
  }

  void search() {
    int arc = -1;
    for (int a = 0; a < d_.arc_count; ++a)
      if (color_[a] < 0) {
        arc = a;
        break;
      }
    if (arc < 0) {
      out_.push_back(Coloring{color_});
      return;
    }
    for (int v = 0; v < x_.order(); ++v) {
      std::vector<int> trail;
      if (assign(arc, v, trail)) search();
      for (int a : trail) color_[a] = -1;
    }
  }

  const Diagram& d_;
  const Quandle& x_;
  std::vector<int> color_;
  std::vector<std::vector<int>> touching_;
  std::vector<Coloring> out_;
};

}  // namespace detail

/// All colorings, sorted lexicographically by arc colors.
inline std::vector<Coloring> colorings(const Diagram& d, const Quandle& x) {
  return detail::ColoringSearch(d, x).run();
}

/**
 * Extends a coloring by region colors from `root_color` on `root` (default:
 * the unbounded region). Returns nothing if some adjacency is violated.
 */
inline std::optional<ShadowColoring> extend_to_regions(const Diagram& d, const Quandle& x, const Coloring& c,
                                                       int root_color, std::optional<int> root = std::nullopt) {
  const int r0 = root.value_or(d.unbounded_region);
  std::vector<std::vector<int>> around(d.region_count);
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    around[d.edges[e].left_region].push_back(e);
    around[d.edges[e].right_region].push_back(e);
  }
  ShadowColoring sc{c.arcs, std::vector<int>(d.region_count, -1)};
  sc.regions[r0] = root_color;
  std::deque<int> queue{r0};
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    for (int e : around[r]) {
      const auto& ed = d.edges[e];
      int y = c.arcs[ed.arc];
      int other, val;
      if (ed.right_region == r) {
        other = ed.left_region;
        val = x.op(sc.regions[r], y);
      } else {
        other = ed.right_region;
        val = x.rdiv(sc.regions[r], y);
      }
      if (sc.regions[other] < 0) {
        sc.regions[other] = val;
        queue.push_back(other);
      }
    }
  }
  for (int v : sc.regions)
    if (v < 0) throw InternalError("region adjacency graph is disconnected");
  if (!is_shadow_coloring(d, x, sc)) return std::nullopt;
  return sc;
}

/// Every shadow coloring: each coloring with every color on the root region.
inline std::vector<ShadowColoring> shadow_colorings(const Diagram& d, const Quandle& x,
                                                    std::optional<int> root = std::nullopt) {
  std::vector<ShadowColoring> out;
  for (const auto& c : colorings(d, x))
    for (int v = 0; v < x.order(); ++v)
      if (auto sc = extend_to_regions(d, x, c, v, root)) out.push_back(std::move(*sc));
  return out;
}

/// Sum over crossings of sign * (x, y), x the source under-arc color and y the over-arc color; degenerate pairs dropped.
inline Chain represented_2cycle(const Diagram& d, const Coloring& c, int modulus = 0) {
  Chain z(2, modulus);
  for (const auto& cr : d.crossings) {
    std::vector<int> t{c.arcs[cr.source_under_arc], c.arcs[cr.over_arc]};
    if (!is_degenerate(t)) z.add(t, cr.sign);
  }
  return z;
}

/// Sum over crossings of sign * (w, x, y) with w the source-region color; degenerate triples dropped.
inline Chain represented_3cycle(const Diagram& d, const ShadowColoring& sc, int modulus = 0) {
  Chain z(3, modulus);
  for (const auto& cr : d.crossings) {
    std::vector<int> t{sc.regions[cr.source_region], sc.arcs[cr.source_under_arc], sc.arcs[cr.over_arc]};
    if (!is_degenerate(t)) z.add(t, cr.sign);
  }
  return z;
}

namespace detail {

inline void require_quandle_cocycle(const Quandle& x, const Cochain& phi, int degree) {
  if (phi.degree() != degree)
    throw ValidationError("expected a " + std::to_string(degree) + "-cocycle, got degree " + std::to_string(phi.degree()));
  if (phi.order() != x.order())
    throw ValidationError("cocycle is defined on a quandle of order " + std::to_string(phi.order()) + ", not " +
                          std::to_string(x.order()));
  if (phi.modulus() < 2) throw ValidationError("cocycle coefficients must be Z/m with m >= 2");
  if (!phi.is_quandle_cochain()) throw ValidationError("cochain does not vanish on degenerate tuples");
  if (!delta(x, phi).is_zero()) throw ValidationError("cochain is not a cocycle (its coboundary is nonzero)");
}

}  // namespace detail

/// Per-crossing product of phi(x, y)^{sign}, accumulated in Z/m; independent of the chain route.
inline int boltzmann_weight(const Diagram& d, const Coloring& c, const Cochain& phi) {
  auto a = FiniteAbelianGroup::cyclic(phi.modulus());
  int w = 0;
  for (const auto& cr : d.crossings) {
    std::vector<int> t{c.arcs[cr.source_under_arc], c.arcs[cr.over_arc]};
    int v = static_cast<int>(phi(t));
    w = cr.sign > 0 ? a.add(w, v) : a.sub(w, v);
  }
  return w;
}

/// Shadow analogue of boltzmann_weight using theta(w, x, y).
inline int shadow_boltzmann_weight(const Diagram& d, const ShadowColoring& sc, const Cochain& theta) {
  auto a = FiniteAbelianGroup::cyclic(theta.modulus());
  int w = 0;
  for (const auto& cr : d.crossings) {
    std::vector<int> t{sc.regions[cr.source_region], sc.arcs[cr.source_under_arc], sc.arcs[cr.over_arc]};
    int v = static_cast<int>(theta(t));
    w = cr.sign > 0 ? a.add(w, v) : a.sub(w, v);
  }
  return w;
}

/// Sum over colorings of t^{<represented 2-cycle, phi>} in Z[Z/m].
inline GroupRingElement cocycle_invariant(const Diagram& d, const Quandle& x, const Cochain& phi) {
  detail::require_quandle_cocycle(x, phi, 2);
  GroupRingElement v(FiniteAbelianGroup::cyclic(phi.modulus()));
  for (const auto& c : colorings(d, x)) v.add(static_cast<int>(pairing(represented_2cycle(d, c), phi)));
  return v;
}

/// Sum over shadow colorings of t^{<represented 3-cycle, theta>} in Z[Z/m].
inline GroupRingElement shadow_invariant(const Diagram& d, const Quandle& x, const Cochain& theta,
                                         std::optional<int> root = std::nullopt) {
  detail::require_quandle_cocycle(x, theta, 3);
  GroupRingElement v(FiniteAbelianGroup::cyclic(theta.modulus()));
  for (const auto& sc : shadow_colorings(d, x, root))
    v.add(static_cast<int>(pairing(represented_3cycle(d, sc), theta)));
  return v;
}

}  // namespace qcoc

#endif

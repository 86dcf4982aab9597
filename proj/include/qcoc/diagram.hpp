#ifndef QCOC_DIAGRAM_HPP
#define QCOC_DIAGRAM_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcoc/error.hpp"

namespace qcoc {

/// A planar diagram code: crossings X[a,b,c,d] with edge labels 1..2n,
/// listed counterclockwise from the incoming under-edge a.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;

  std::size_t size() const noexcept { return crossings.size(); }
  int edge_count() const noexcept { return static_cast<int>(2 * crossings.size()); }
  bool operator==(const PDCode&) const = default;
};

inline std::string format_pd(const PDCode& pd) {
  std::string out;
  for (std::size_t k = 0; k < pd.crossings.size(); ++k) {
    const auto& x = pd.crossings[k];
    if (k) out += ';';
    out += "X[" + std::to_string(x[0]) + ',' + std::to_string(x[1]) + ',' + std::to_string(x[2]) + ',' +
           std::to_string(x[3]) + ']';
  }
  return out;
}

namespace detail {

class PDLexer {
 public:
  explicit PDLexer(const std::string& text) : s_(text) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  bool peek(char c) {
    skip_ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  bool accept_word(const std::string& w) {
    skip_ws();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    i_ += w.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip_ws();
    std::size_t b = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == b || (i_ == b + 1 && !std::isdigit(static_cast<unsigned char>(s_[b])))) {
      i_ = b;
      fail("expected an integer");
    }
    try {
      return std::stoi(s_.substr(b, i_ - b));
    } catch (const std::exception&) {
      i_ = b;
      fail("integer out of range");
    }
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("PD code: " + msg, i_); }
  std::size_t pos() const noexcept { return i_; }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/**
 * Checks label multiplicity only; orientation and strand continuity are
 * checked when the diagram is built.
 */
inline void validate_pd_labels(const PDCode& pd) {
  const int m = pd.edge_count();
  std::vector<int> count(m + 1, 0);
  for (std::size_t k = 0; k < pd.size(); ++k) {
    for (int e : pd.crossings[k]) {
      if (e < 1 || e > m)
        throw ValidationError("crossing " + std::to_string(k + 1) + " (" + format_pd(PDCode{{pd.crossings[k]}}) +
                              "): label " + std::to_string(e) + " outside 1.." + std::to_string(m));
      ++count[e];
    }
  }
  for (int e = 1; e <= m; ++e) {
    if (count[e] != 2) {
      for (std::size_t k = 0; k < pd.size(); ++k)
        for (int x : pd.crossings[k])
          if (x == e && count[e] > 2)
            throw ValidationError("label " + std::to_string(e) + " appears " + std::to_string(count[e]) +
                                  " times (crossing " + std::to_string(k + 1) + ")");
      throw ValidationError("label " + std::to_string(e) + " appears " + std::to_string(count[e]) +
                            " times; every label in 1.." + std::to_string(m) + " must appear exactly twice");
    }
  }
}

/// Parses "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]" (also "PD[X[..],X[..]]"); empty text is the crossingless unknot.
inline PDCode parse_pd_unvalidated(const std::string& text) {
  detail::PDLexer lx(text);
  PDCode pd;
  bool wrapped = lx.accept_word("PD");
  if (wrapped) lx.expect('[');
  while (!lx.done()) {
    if (wrapped && lx.peek(']')) break;
    if (!lx.accept('X')) lx.fail("expected 'X['");
    lx.expect('[');
    std::array<int, 4> x{};
    for (int j = 0; j < 4; ++j) {
      if (j) lx.expect(',');
      x[j] = lx.integer();
    }
    lx.expect(']');
    pd.crossings.push_back(x);
    if (!lx.accept(';')) lx.accept(',');
  }
  if (wrapped) {
    lx.expect(']');
    if (!lx.done()) lx.fail("trailing text after PD[...]");
  }
  return pd;
}

inline PDCode parse_pd(const std::string& text) {
  PDCode pd = parse_pd_unvalidated(text);
  validate_pd_labels(pd);
  return pd;
}

/// Braid word on `strands` strands: letter i is sigma_i, -i its inverse.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;
  bool operator==(const BraidWord&) const = default;
};

inline void validate_braid(const BraidWord& w) {
  if (w.strands < 1) throw ValidationError("braid needs at least one strand");
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    int l = w.letters[i];
    if (l == 0 || std::abs(l) > w.strands - 1)
      throw ValidationError("braid letter " + std::to_string(l) + " at position " + std::to_string(i + 1) +
                            " invalid for " + std::to_string(w.strands) + " strands");
  }
}

/// Letters separated by whitespace or commas, e.g. "1 1 -2".
inline BraidWord parse_braid(const std::string& text, int strands) {
  BraidWord w;
  w.strands = strands;
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::string tok;
  std::size_t pos = 0;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError("braid word: bad letter '" + tok + "'", text.find(tok, pos));
    pos = text.find(tok, pos) + tok.size();
    w.letters.push_back(v);
  }
  validate_braid(w);
  return w;
}

inline std::string format_braid(const BraidWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) out += (i ? " " : "") + std::to_string(w.letters[i]);
  return out;
}

struct DiagramCrossing {
  int sign = 1;
  std::array<int, 4> edges{};    // 0-based edge ids in PD slot order (a, b, c, d)
  std::array<int, 4> regions{};  // region in the corner between slot j and slot j+1
  int over_arc = 0;
  int under_in_arc = 0;   // arc of slot a
  int under_out_arc = 0;  // arc of slot c
  int source_under_arc = 0;  // r1: the under-arc the over-arc normal points away from
  int target_under_arc = 0;  // r2 = r1 * over
  int source_region = 0;
};

struct DiagramEdge {
  int tail = -1, tail_slot = -1, head = -1, head_slot = -1;  // crossing / PD slot at each end
  int arc = 0;
  int component = 0;
  int left_region = 0;   // the co-orientation normal points into this region
  int right_region = 0;
};

/**
 * An oriented, connected classical diagram. Regions are the faces of the
 * underlying 4-valent plane graph; crossing signs follow the PD rule
 * "positive iff b = d + 1 along the component".
 */
struct Diagram {
  PDCode pd;
  std::vector<DiagramCrossing> crossings;
  std::vector<DiagramEdge> edges;
  int arc_count = 0;
  int region_count = 0;
  int unbounded_region = 0;
  std::pair<int, int> unbounded_corner{-1, -1};  // (crossing, corner) or (-1,-1) when crossingless
  int component_count = 0;

  std::vector<int> signs() const {
    std::vector<int> s;
    for (const auto& c : crossings) s.push_back(c.sign);
    return s;
  }
  int writhe() const {
    int w = 0;
    for (const auto& c : crossings) w += c.sign;
    return w;
  }
  int euler_characteristic() const {
    return static_cast<int>(crossings.size()) - static_cast<int>(edges.size()) + region_count;
  }
  /// Same diagram with another face regarded as unbounded.
  Diagram with_unbounded(int region) const {
    if (region < 0 || region >= region_count) throw ValidationError("no region " + std::to_string(region));
    Diagram d = *this;
    d.unbounded_region = region;
    d.unbounded_corner = {-1, -1};
    for (std::size_t k = 0; k < crossings.size() && d.unbounded_corner.first < 0; ++k)
      for (int j = 0; j < 4; ++j)
        if (crossings[k].regions[j] == region) {
          d.unbounded_corner = {static_cast<int>(k), j};
          break;
        }
    return d;
  }
};

/**
 * Builds arcs, regions, orientation and signs from a PD code.
 * `unbounded` names a corner (crossing, j) of the unbounded face; by
 * default the face with the most corners is used.
 */
inline Diagram build_diagram(const PDCode& pd, std::optional<std::pair<int, int>> unbounded = std::nullopt) {
  validate_pd_labels(pd);
  const int n = static_cast<int>(pd.size());
  Diagram d;
  d.pd = pd;
  if (n == 0) {
    d.edges.push_back(DiagramEdge{-1, -1, -1, -1, 0, 0, 1, 0});
    d.arc_count = 1;
    d.region_count = 2;
    d.unbounded_region = 0;
    d.component_count = 1;
    return d;
  }
  const int m = 2 * n;
  auto where = [&](int k, int s) { return pd.crossings[k][s] - 1; };
  // occurrences of each edge
  std::vector<std::vector<std::pair<int, int>>> occ(m);
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < 4; ++s) occ[where(k, s)].push_back({k, s});
  auto partner = [&](int k, int s) {
    const auto& o = occ[where(k, s)];
    return (o[0] == std::make_pair(k, s)) ? o[1] : o[0];
  };

  // strand components
  detail::UnionFind strands(m);
  for (int k = 0; k < n; ++k) {
    strands.unite(where(k, 0), where(k, 2));
    strands.unite(where(k, 1), where(k, 3));
  }
  std::vector<int> comp_lo(m, m), comp_hi(m, -1), comp_size(m, 0);
  for (int e = 0; e < m; ++e) {
    int r = strands.find(e);
    comp_lo[r] = std::min(comp_lo[r], e);
    comp_hi[r] = std::max(comp_hi[r], e);
    ++comp_size[r];
  }
  for (int e = 0; e < m; ++e) {
    int r = strands.find(e);
    if (comp_hi[r] - comp_lo[r] + 1 != comp_size[r])
      throw ValidationError("edge labels of a component are not consecutive (component containing label " +
                            std::to_string(e + 1) + ")");
  }
  auto succ = [&](int e) {
    int r = strands.find(e);
    return e == comp_hi[r] ? comp_lo[r] : e + 1;
  };

  // orientation: role[k][s] = +1 edge enters crossing k at slot s, -1 leaves
  std::vector<std::array<int, 4>> role(n, {0, 0, 0, 0});
  std::vector<std::pair<int, int>> queue;
  auto assign = [&](int k, int s, int r) {
    if (role[k][s] == r) return;
    if (role[k][s] != 0)
      throw ValidationError("under-strand discontinuity at crossing " + std::to_string(k + 1) + " (" +
                            format_pd(PDCode{{pd.crossings[k]}}) + "): inconsistent strand orientation");
    role[k][s] = r;
    queue.push_back({k, s});
  };
  auto propagate = [&]() {
    while (!queue.empty()) {
      auto [k, s] = queue.back();
      queue.pop_back();
      int r = role[k][s];
      auto [k2, s2] = partner(k, s);
      assign(k2, s2, -r);
      assign(k, (s + 2) % 4, -r);
    }
  };
  for (int k = 0; k < n; ++k) {
    assign(k, 0, 1);
    assign(k, 2, -1);
  }
  propagate();
  for (int k = 0; k < n; ++k) {
    for (int s : {1, 3}) {
      if (role[k][s] != 0) continue;
      // a component that never passes under: orient by increasing labels
      int e = where(k, s);
      int lo = comp_lo[strands.find(e)];
      for (auto [k2, s2] : occ[lo]) {
        if (where(k2, (s2 + 2) % 4) == succ(lo)) {
          assign(k2, s2, 1);
          break;
        }
      }
      propagate();
    }
  }

  // numbering must follow the orientation
  for (int k = 0; k < n; ++k) {
    const auto& x = pd.crossings[k];
    if (where(k, 2) != succ(where(k, 0)))
      throw ValidationError("under-strand discontinuity at crossing " + std::to_string(k + 1) + " (" +
                            format_pd(PDCode{{x}}) + "): c must be the successor edge of a along its component");
    int in = role[k][1] == 1 ? 1 : 3;
    if (where(k, (in + 2) % 4) != succ(where(k, in)))
      throw ValidationError("malformed PD at crossing " + std::to_string(k + 1) + " (" + format_pd(PDCode{{x}}) +
                            "): over-edges b and d are not successive along their component");
  }

  // faces
  std::vector<int> face(4 * n, -1);
  std::vector<int> face_size;
  for (int start = 0; start < 4 * n; ++start) {
    if (face[start] >= 0) continue;
    int id = static_cast<int>(face_size.size());
    face_size.push_back(0);
    int c = start;
    while (face[c] < 0) {
      face[c] = id;
      ++face_size[id];
      auto [k2, s2] = partner(c / 4, c % 4);
      c = 4 * k2 + (s2 + 3) % 4;
    }
  }
  detail::UnionFind crossing_graph(n);
  for (int e = 0; e < m; ++e) crossing_graph.unite(occ[e][0].first, occ[e][1].first);
  for (int k = 0; k < n; ++k)
    if (crossing_graph.find(k) != 0) throw ValidationError("split diagrams are not supported (diagram is disconnected)");
  if (static_cast<int>(face_size.size()) != n + 2)
    throw ValidationError("PD code is not a connected planar diagram: " + std::to_string(face_size.size()) +
                          " faces, expected " + std::to_string(n + 2));
  d.region_count = n + 2;

  // arcs: over-strands glue b and d
  detail::UnionFind arcs(m);
  for (int k = 0; k < n; ++k) arcs.unite(where(k, 1), where(k, 3));
  std::vector<int> arc_of(m), arc_id(m, -1);
  for (int e = 0; e < m; ++e) {
    int r = arcs.find(e);
    if (arc_id[r] < 0) arc_id[r] = d.arc_count++;
    arc_of[e] = arc_id[r];
  }

  std::vector<int> comp_id(m, -1);
  for (int e = 0; e < m; ++e) {
    int r = strands.find(e);
    if (comp_id[r] < 0) comp_id[r] = d.component_count++;
  }

  d.edges.resize(m);
  for (int e = 0; e < m; ++e) {
    DiagramEdge& ed = d.edges[e];
    for (auto [k, s] : occ[e]) {
      if (role[k][s] == 1) {
        ed.head = k;
        ed.head_slot = s;
      } else {
        ed.tail = k;
        ed.tail_slot = s;
      }
    }
    if (ed.head < 0 || ed.tail < 0) throw InternalError("edge without head or tail");
    ed.arc = arc_of[e];
    ed.component = comp_id[strands.find(e)];
    ed.left_region = face[4 * ed.tail + ed.tail_slot];
    ed.right_region = face[4 * ed.head + ed.head_slot];
  }

  for (int k = 0; k < n; ++k) {
    DiagramCrossing c;
    for (int s = 0; s < 4; ++s) {
      c.edges[s] = where(k, s);
      c.regions[s] = face[4 * k + s];
    }
    c.sign = role[k][3] == 1 ? 1 : -1;
    c.over_arc = arc_of[where(k, 1)];
    c.under_in_arc = arc_of[where(k, 0)];
    c.under_out_arc = arc_of[where(k, 2)];
    if (c.sign > 0) {
      c.source_under_arc = c.under_in_arc;
      c.target_under_arc = c.under_out_arc;
      c.source_region = c.regions[0];
    } else {
      c.source_under_arc = c.under_out_arc;
      c.target_under_arc = c.under_in_arc;
      c.source_region = c.regions[1];
    }
    d.crossings.push_back(c);
  }

  if (unbounded) {
    auto [k, j] = *unbounded;
    if (k < 0 || k >= n || j < 0 || j > 3) throw ValidationError("unbounded corner out of range");
    d.unbounded_region = face[4 * k + j];
    d.unbounded_corner = {k, j};
  } else {
    int best = 0;
    for (int f = 1; f < d.region_count; ++f)
      if (face_size[f] > face_size[best]) best = f;
    d = d.with_unbounded(best);
  }
  return d;
}

/// Swaps over and under at every crossing; every sign flips.
inline PDCode mirror_pd(const PDCode& pd) {
  Diagram d = build_diagram(pd);
  PDCode out;
  for (const auto& c : d.crossings) {
    const auto& x = pd.crossings[out.crossings.size()];
    if (c.sign > 0)
      out.crossings.push_back({x[3], x[0], x[1], x[2]});
    else
      out.crossings.push_back({x[1], x[2], x[3], x[0]});
  }
  return out;
}

inline Diagram mirror(const Diagram& d) {
  if (d.crossings.empty()) return d;
  PDCode pd = mirror_pd(d.pd);
  auto [k, j] = d.unbounded_corner;
  int shift = d.crossings[k].sign > 0 ? 1 : 3;
  return build_diagram(pd, std::make_pair(k, (j + shift) % 4));
}

// ---------------------------------------------------------------------------
// Geometric builder for braid and plat closures

namespace detail {

/**
 * Crossings are placed with geometric slots counterclockwise
 * SW, SE, NE, NW (0..3); strands run SW-NE and SE-NW. Nodes 4k+g are
 * crossing ends, larger ids are pass-through terminals (degree 2).
 */
class GeometricBuilder {
 public:
  explicit GeometricBuilder(int crossings) : n_(crossings), over02_(crossings, true) {}

  int terminal() { return 4 * n_ + terminals_++; }
  void set_over_sw_ne(int k, bool v) { over02_[k] = v; }
  void link(int a, int b) { links_.push_back({a, b}); }

  /// Seeds name crossing ends where a strand enters; listed order fixes component order.
  std::pair<PDCode, std::optional<std::pair<int, int>>> finish(const std::vector<int>& incoming_seeds,
                                                                std::optional<std::pair<int, int>> unbounded_geo) {
    const int nodes = 4 * n_ + terminals_;
    std::vector<std::vector<int>> at(nodes);
    for (int l = 0; l < static_cast<int>(links_.size()); ++l) {
      at[links_[l].first].push_back(l);
      at[links_[l].second].push_back(l);
    }
    std::vector<int> partner(4 * n_, -1);
    std::vector<bool> seen(nodes, false);
    for (int e = 0; e < 4 * n_; ++e) {
      if (at[e].size() != 1) throw InternalError("crossing end with wrong link count");
      int l = at[e][0], node = e;
      seen[e] = true;
      while (true) {
        node = links_[l].first == node ? links_[l].second : links_[l].first;
        seen[node] = true;
        if (node < 4 * n_) break;
        if (at[node].size() != 2) throw InternalError("terminal with wrong link count");
        l = at[node][0] == l ? at[node][1] : at[node][0];
      }
      partner[e] = node;
    }
    int free_loops = 0;
    {
      std::vector<bool> done = seen;
      for (int t = 4 * n_; t < nodes; ++t) {
        if (done[t]) continue;
        ++free_loops;
        std::vector<int> stack{t};
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          if (done[v]) continue;
          done[v] = true;
          for (int l : at[v]) stack.push_back(links_[l].first == v ? links_[l].second : links_[l].first);
        }
      }
    }
    if (n_ == 0) {
      if (free_loops == 1) return {PDCode{}, std::nullopt};
      throw ValidationError("split diagrams are not supported (" + std::to_string(free_loops) + " separate circles)");
    }
    if (free_loops > 0) throw ValidationError("split diagrams are not supported (a strand has no crossings)");

    std::vector<int> label(4 * n_, 0);
    std::vector<bool> incoming(4 * n_, false), oriented(4 * n_, false);
    int next_label = 1;
    auto orient = [&](int seed) {
      if (oriented[seed]) return;
      std::vector<int> ins;
      int p = seed;
      do {
        ins.push_back(p);
        int out = 4 * (p / 4) + (p % 4 + 2) % 4;
        if (oriented[p] || oriented[out]) throw InternalError("strand traversal revisited an end");
        oriented[p] = oriented[out] = true;
        p = partner[out];
      } while (p != seed);
      const int len = static_cast<int>(ins.size());
      for (int i = 0; i < len; ++i) {
        int out = 4 * (ins[i] / 4) + (ins[i] % 4 + 2) % 4;
        incoming[ins[i]] = true;
        label[ins[i]] = next_label + i;
        label[out] = next_label + (i + 1) % len;
      }
      next_label += len;
    };
    for (int s : incoming_seeds) orient(s);
    for (int e = 0; e < 4 * n_; ++e) orient(e);

    PDCode pd;
    std::vector<int> under_start(n_);
    for (int k = 0; k < n_; ++k) {
      int u = over02_[k] ? (incoming[4 * k + 1] ? 1 : 3) : (incoming[4 * k + 0] ? 0 : 2);
      under_start[k] = u;
      std::array<int, 4> x{};
      for (int j = 0; j < 4; ++j) x[j] = label[4 * k + (u + j) % 4];
      pd.crossings.push_back(x);
    }
    std::optional<std::pair<int, int>> hint;
    if (unbounded_geo) {
      auto [k, g] = *unbounded_geo;
      hint = std::make_pair(k, (g - under_start[k] + 4) % 4);
    }
    return {pd, hint};
  }

 private:
  int n_;
  int terminals_ = 0;
  std::vector<bool> over02_;
  std::vector<std::pair<int, int>> links_;
};

struct BraidLayout {
  GeometricBuilder builder;
  std::vector<int> bottom, top;  // per position (0-based)
  std::optional<std::pair<int, int>> west;  // West corner of the first crossing on positions 1-2
};

/// Stacks the letters bottom to top; sigma_i (positive) puts the SW-NE strand over.
inline BraidLayout layout_braid(const BraidWord& w) {
  validate_braid(w);
  BraidLayout lay{GeometricBuilder(static_cast<int>(w.letters.size())), {}, {}, std::nullopt};
  for (int i = 0; i < w.strands; ++i) lay.bottom.push_back(lay.builder.terminal());
  std::vector<int> dangling = lay.bottom;
  for (int k = 0; k < static_cast<int>(w.letters.size()); ++k) {
    int l = w.letters[k];
    int i = std::abs(l) - 1;
    lay.builder.set_over_sw_ne(k, l > 0);
    lay.builder.link(dangling[i], 4 * k + 0);
    lay.builder.link(dangling[i + 1], 4 * k + 1);
    dangling[i] = 4 * k + 3;
    dangling[i + 1] = 4 * k + 2;
    if (i == 0 && !lay.west) lay.west = std::make_pair(k, 3);
  }
  lay.top = dangling;
  return lay;
}

}  // namespace detail

/// PD code (and unbounded corner) of the closure of a braid, strands oriented upward.
/// With `reverse_second` the component through the SE end of the first crossing is reversed (2-strand use).
inline std::pair<PDCode, std::optional<std::pair<int, int>>> braid_closure_pd(const BraidWord& w,
                                                                             bool reverse_second = false) {
  auto lay = detail::layout_braid(w);
  for (int i = 0; i < w.strands; ++i) lay.builder.link(lay.top[i], lay.bottom[i]);
  std::vector<int> seeds;
  const int n = static_cast<int>(w.letters.size());
  if (reverse_second && n > 0) {
    seeds = {0, 3};  // strand entering SW keeps its direction; the one through SE/NW is reversed
  } else {
    for (int k = 0; k < n; ++k) {
      seeds.push_back(4 * k);
      seeds.push_back(4 * k + 1);
    }
  }
  return lay.builder.finish(seeds, lay.west);
}

inline Diagram braid_closure(const BraidWord& w) {
  auto [pd, hint] = braid_closure_pd(w);
  return build_diagram(pd, hint);
}

/// Plat closure: caps and cups join positions (1,2), (3,4), ... at both ends. Needs an even strand count.
inline Diagram plat_closure(const BraidWord& w) {
  if (w.strands % 2 != 0) throw ValidationError("plat closure needs an even number of strands");
  auto lay = detail::layout_braid(w);
  for (int i = 0; i + 1 < w.strands; i += 2) {
    lay.builder.link(lay.bottom[i], lay.bottom[i + 1]);
    lay.builder.link(lay.top[i], lay.top[i + 1]);
  }
  auto [pd, hint] = lay.builder.finish({0}, lay.west);
  return build_diagram(pd, hint);
}

/**
 * Two-bridge diagram from a continued-fraction vector (a_1, ..., a_r):
 * the 4-plat of sigma_2^{a_1} sigma_1^{-a_2} sigma_2^{a_3} ... An even-length
 * vector is first rewritten to the equivalent odd-length one.
 */
inline Diagram two_bridge(std::vector<int> a) {
  if (a.empty() || std::find(a.begin(), a.end(), 0) != a.end())
    throw ValidationError("two-bridge vector must be nonempty with nonzero entries");
  if (a.size() % 2 == 0) {
    int s = a.back() > 0 ? 1 : -1;
    if (a.back() == s) {
      a.pop_back();
      a.back() += s;
      if (a.back() == 0) throw ValidationError("degenerate two-bridge vector");
    } else {
      a.back() -= s;
      a.push_back(s);
    }
  }
  BraidWord w{4, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    int gen = (i % 2 == 0) ? 2 : -1;
    int letter = a[i] > 0 ? gen : -gen;
    for (int j = 0; j < std::abs(a[i]); ++j) w.letters.push_back(letter);
  }
  return plat_closure(w);
}

// ---------------------------------------------------------------------------
// Families

inline Diagram torus2(int n) {
  if (n < 1) throw ValidationError("torus2 needs n >= 1");
  return braid_closure(BraidWord{2, std::vector<int>(n, 1)});
}

inline Diagram torus3(int n) {
  if (n < 1) throw ValidationError("torus3 needs n >= 1");
  BraidWord w{3, {}};
  for (int i = 0; i < n; ++i) {
    w.letters.push_back(1);
    w.letters.push_back(2);
  }
  return braid_closure(w);
}

/// Two-strand antiparallel twist with `crossings` (even) crossings, all positive.
inline Diagram tprime(int crossings) {
  if (crossings < 2 || crossings % 2 != 0) throw ValidationError("tprime needs an even crossing count >= 2");
  auto [pd, hint] = braid_closure_pd(BraidWord{2, std::vector<int>(crossings, -1)}, true);
  return build_diagram(pd, hint);
}

/**
 * Twist knot: n twist crossings (negative n: negative twists) and a
 * two-crossing clasp, as the 4-plat sigma_2^{-n} sigma_1 sigma_2^{-1}.
 * For n > 0 the twist crossings are positive and doubled(1) is the
 * all-positive trefoil.
 */
inline Diagram doubled(int n) {
  std::vector<int> letters(std::abs(n), n > 0 ? -2 : 2);
  letters.push_back(1);
  letters.push_back(-2);
  return plat_closure(BraidWord{4, letters});
}

inline Diagram family(const std::string& name, int n) {
  if (name == "torus2") return torus2(n);
  if (name == "torus3") return torus3(n);
  if (name == "tprime") return tprime(n);
  if (name == "doubled") return doubled(n);
  throw ValidationError("unknown family '" + name + "' (torus2, torus3, doubled, tprime)");
}

/// "torus2:9" style specification.
inline Diagram family(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("family must be written name:n, got '" + spec + "'");
  std::size_t used = 0;
  int n = 0;
  std::string num = spec.substr(colon + 1);
  try {
    n = std::stoi(num, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != num.size()) throw ParseError("bad family parameter '" + num + "'", colon + 1);
  return family(spec.substr(0, colon), n);
}

}  // namespace qcoc

#endif

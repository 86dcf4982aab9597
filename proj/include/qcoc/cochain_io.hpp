#ifndef QCOC_COCHAIN_IO_HPP
#define QCOC_COCHAIN_IO_HPP

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcoc/abelian_group.hpp"
#include "qcoc/chain_complex.hpp"
#include "qcoc/error.hpp"
#include "qcoc/extensions.hpp"

namespace qcoc {

/*
 * .coc files. A header line followed by one line per nonzero value:
 *
 *   cochain deg=3 mod=3 quandle=3
 *   0 1 2 : 1
 *
 * "mod=2,2" declares values in Z_2 x Z_2; such values are written "1,0".
 * Chains use "chain deg=2 mod=0" and integer coefficients. '#' starts a
 * comment.
 */

namespace detail {

struct CocHeader {
  std::string kind;
  int degree = -1;
  std::string modulus;
  int order = -1;
};

inline std::string strip_comment(std::string line) {
  if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
  return line;
}

inline int parse_int(const std::string& s, const std::string& what, int lineno) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ParseError("bad " + what + " '" + s + "' on line " + std::to_string(lineno));
  return v;
}

inline CocHeader parse_header(std::istream& in, int& lineno) {
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    std::istringstream ls(line);
    CocHeader h;
    if (!(ls >> h.kind)) continue;
    if (h.kind != "cochain" && h.kind != "chain")
      throw ParseError("expected a 'cochain' or 'chain' header on line " + std::to_string(lineno));
    std::string kv;
    while (ls >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("bad header field '" + kv + "'");
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "deg")
        h.degree = parse_int(val, "degree", lineno);
      else if (key == "mod")
        h.modulus = val;
      else if (key == "quandle")
        h.order = parse_int(val, "quandle order", lineno);
      else
        throw ParseError("unknown header field '" + key + "'");
    }
    if (h.degree < 0) throw ParseError("header needs deg=<n>");
    if (h.modulus.empty()) throw ParseError("header needs mod=<m>");
    if (h.kind == "cochain" && h.order < 1) throw ParseError("cochain header needs quandle=<order>");
    return h;
  }
  throw ParseError("empty cochain file");
}

// "x1 x2 ... : v" -> (tuple, value text)
inline std::pair<std::vector<int>, std::string> parse_term(const std::string& line, int degree, int lineno) {
  auto colon = line.find(':');
  if (colon == std::string::npos) throw ParseError("expected 'x1 ... xn : value' on line " + std::to_string(lineno));
  std::istringstream ts(line.substr(0, colon));
  std::vector<int> t;
  std::string tok;
  while (ts >> tok) t.push_back(parse_int(tok, "tuple entry", lineno));
  if (static_cast<int>(t.size()) != degree)
    throw ParseError("tuple of length " + std::to_string(t.size()) + " in a degree-" + std::to_string(degree) +
                     " file on line " + std::to_string(lineno));
  std::string v = line.substr(colon + 1);
  v.erase(0, v.find_first_not_of(" \t"));
  v.erase(v.find_last_not_of(" \t\r") + 1);
  return {t, v};
}

}  // namespace detail

inline GroupCochain parse_group_cochain(std::istream& in) {
  int lineno = 0;
  auto h = detail::parse_header(in, lineno);
  if (h.kind != "cochain") throw ParseError("expected a cochain file, found a chain");
  auto group = FiniteAbelianGroup::parse(h.modulus);
  if (group.is_trivial()) throw ParseError("cochain modulus must be at least 2");
  GroupCochain c(group, h.order, h.degree);
  std::set<std::vector<int>> seen;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto [t, v] = detail::parse_term(line, h.degree, lineno);
    for (int x : t)
      if (x < 0 || x >= h.order) throw ParseError("tuple entry out of range on line " + std::to_string(lineno));
    if (!seen.insert(t).second) throw ParseError("duplicate tuple on line " + std::to_string(lineno));
    std::vector<int> comps;
    std::string item;
    std::istringstream vs(v);
    while (std::getline(vs, item, ',')) comps.push_back(detail::parse_int(item, "value", lineno));
    if (static_cast<int>(comps.size()) != group.rank())
      throw ParseError("value has " + std::to_string(comps.size()) + " components, expected " +
                       std::to_string(group.rank()) + " on line " + std::to_string(lineno));
    c.set(t, group.encode(comps));
  }
  return c;
}

inline Cochain parse_cochain(std::istream& in) {
  auto g = parse_group_cochain(in);
  if (!g.group().is_cyclic()) throw ValidationError("expected cyclic coefficients, got " + g.group().to_string());
  return g.to_cochain();
}

inline Cochain parse_cochain(const std::string& text) {
  std::istringstream in(text);
  return parse_cochain(in);
}

inline GroupCochain read_group_cochain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open cochain file '" + path + "'");
  return parse_group_cochain(in);
}

inline Cochain read_cochain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open cochain file '" + path + "'");
  return parse_cochain(in);
}

inline std::string format_group_cochain(const GroupCochain& c) {
  std::string mod;
  for (std::size_t i = 0; i < c.group().orders().size(); ++i)
    mod += (i ? "," : "") + std::to_string(c.group().orders()[i]);
  std::ostringstream out;
  out << "cochain deg=" << c.degree() << " mod=" << mod << " quandle=" << c.order() << "\n";
  for (TupleCode code = 0; code < c.values().size(); ++code) {
    if (c.at(code) == 0) continue;
    auto t = decode_tuple(code, c.order(), c.degree());
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
    out << " :";
    auto comps = c.group().decode(c.at(code));
    for (std::size_t i = 0; i < comps.size(); ++i) out << (i ? "," : " ") << comps[i];
    out << "\n";
  }
  return out.str();
}

inline std::string format_cochain(const Cochain& c) {
  if (c.modulus() < 2) throw ValidationError("only Z/m cochains have a text form");
  return format_group_cochain(GroupCochain::from_cochain(c));
}

inline Chain parse_chain(std::istream& in) {
  int lineno = 0;
  auto h = detail::parse_header(in, lineno);
  if (h.kind != "chain") throw ParseError("expected a chain file, found a cochain");
  int modulus = detail::parse_int(h.modulus, "modulus", lineno);
  if (modulus < 0 || modulus == 1) throw ParseError("chain modulus must be 0 or >= 2");
  Chain z(h.degree, modulus);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto [t, v] = detail::parse_term(line, h.degree, lineno);
    for (int x : t)
      if (x < 0) throw ParseError("negative tuple entry on line " + std::to_string(lineno));
    z.add(t, detail::parse_int(v, "coefficient", lineno));
  }
  return z;
}

inline Chain parse_chain(const std::string& text) {
  std::istringstream in(text);
  return parse_chain(in);
}

inline Chain read_chain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open chain file '" + path + "'");
  return parse_chain(in);
}

inline std::string format_chain(const Chain& z) {
  std::ostringstream out;
  out << "chain deg=" << z.degree() << " mod=" << z.modulus() << "\n";
  for (const auto& [t, c] : z.terms()) {
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
    out << " : " << c << "\n";
  }
  return out.str();
}

}  // namespace qcoc

#endif

// qcoc: command-line front end for quandle (co)homology, cocycle invariants
// of knot diagrams, and quandle extensions.

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcoc/qcoc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qcoc;

namespace {

/// Raised for usage and I/O problems (exit code 2).
struct UsageError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

Quandle load_quandle(const std::string& path, bool unchecked = false) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open quandle file '" + path + "'");
  return parse_qnd(in, unchecked, fs::path(path).stem().string());
}

/// "xi" is the built-in 3-cocycle of R_3; anything else is a .coc path.
Cochain load_cocycle(const std::string& ref) {
  if (ref == "xi") return xi_cocycle();
  std::ifstream in(ref);
  if (!in) throw UsageError("cannot open cochain file '" + ref + "'");
  return parse_cochain(in);
}

GroupCochain load_group_cocycle(const std::string& ref) {
  if (ref == "xi") return GroupCochain::from_cochain(xi_cocycle());
  std::ifstream in(ref);
  if (!in) throw UsageError("cannot open cochain file '" + ref + "'");
  return parse_group_cochain(in);
}

// ---------------------------------------------------------------------------
// quandle

int cmd_quandle_make(const std::vector<std::string>& args, const std::string& out, int nfold) {
  if (args.empty()) throw UsageError("quandle make needs a kind: trivial, dihedral, alexander, conj, quaternion");
  const std::string& kind = args[0];
  auto need = [&](std::size_t k) {
    if (args.size() != k + 1) throw UsageError("quandle make " + kind + " expects " + std::to_string(k) + " argument(s)");
  };
  auto integer = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("expected an integer, got '" + s + "'");
  };
  Quandle q;
  if (kind == "trivial") {
    need(1);
    q = trivial_quandle(integer(args[1]));
  } else if (kind == "dihedral") {
    need(1);
    q = dihedral_quandle(integer(args[1]));
  } else if (kind == "alexander") {
    need(2);
    std::vector<int> h;
    std::string t = args[2];
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::string tok;
    while (in >> tok) h.push_back(integer(tok));
    q = alexander_quandle(integer(args[1]), h);
  } else if (kind == "conj") {
    need(1);
    std::istringstream in(slurp(args[1]));
    std::string word;
    int n = 0;
    if (!(in >> word) || word != "group" || !(in >> n) || n < 1) throw ParseError("group file needs header 'group n'");
    Table g(n, std::vector<int>(n));
    for (auto& row : g)
      for (auto& v : row)
        if (!(in >> v)) throw ParseError("group table truncated");
    q = conjugation_quandle(g, nfold);
  } else if (kind == "quaternion") {
    need(0);
    q = conjugation_quandle(quaternion_group_table(), nfold);
  } else if (kind == "raw") {
    need(1);
    q = load_quandle(args[1]);
  } else {
    throw UsageError("unknown quandle kind '" + kind + "'");
  }
  emit(out, format_qnd(q));
  return 0;
}

int cmd_quandle_check(const std::string& path) {
  std::istringstream in(slurp(path));
  Table t;
  try {
    t = parse_qnd(in, true).table();
  } catch (const ValidationError& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return 1;
  }
  auto report = check_quandle(t);
  std::cout << report.to_string();
  return report.valid() ? 0 : 1;
}

int cmd_quandle_iso(const std::string& a, const std::string& b) {
  auto x = load_quandle(a), y = load_quandle(b);
  auto f = are_isomorphic(x, y);
  if (!f) {
    std::cout << "not isomorphic\n";
    return 1;
  }
  std::cout << "isomorphic\n";
  for (std::size_t i = 0; i < f->map.size(); ++i) std::cout << i << " -> " << f->map[i] << "\n";
  return 0;
}

int cmd_quandle_homs(const std::string& a, const std::string& b) {
  auto x = load_quandle(a), y = load_quandle(b);
  auto homs = quandle_homs(x, y);
  std::cout << homs.size() << " homomorphisms\n";
  for (const auto& h : homs) {
    for (std::size_t i = 0; i < h.map.size(); ++i) std::cout << (i ? " " : "") << h.map[i];
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// homology / cocycles

int parse_coeff(const std::string& c) {
  if (c == "Z") return 0;
  std::string digits = c;
  if (!digits.empty() && digits[0] == 'Z') digits.erase(0, 1);
  if (!digits.empty() && digits[0] == '_') digits.erase(0, 1);
  try {
    std::size_t used = 0;
    int m = std::stoi(digits, &used);
    if (used == digits.size() && m >= 2) return m;
  } catch (const std::exception&) {
  }
  throw UsageError("coefficients must be Z or Z<m> with m >= 2, got '" + c + "'");
}

struct HomologyOptions {
  std::string quandle, theory = "Q", coeff = "Z";
  int degree = 2;
  bool cohomology = false;
  int max_degree = 5;
  std::size_t memory_mb = 2048;
};

int cmd_homology(const HomologyOptions& o) {
  auto x = load_quandle(o.quandle);
  ComplexLimits limits{o.max_degree, o.memory_mb << 20};
  auto theory = parse_theory(o.theory);
  int m = parse_coeff(o.coeff);
  auto g = o.cohomology ? cohomology(x, theory, o.degree, m, limits) : homology(x, theory, o.degree, m, limits);
  std::cout << g.to_string() << "\n";
  return 0;
}

int cmd_cocycles(const std::string& quandle, int degree, int p, bool nontrivial, const std::string& out) {
  auto x = load_quandle(quandle);
  auto basis = cocycle_space(x, degree, p);
  if (nontrivial) {
    for (const auto& c : basis)
      if (!is_coboundary(x, c)) {
        emit(out, format_cochain(c));
        return 0;
      }
    std::cerr << "every " << degree << "-cocycle is a coboundary\n";
    return 1;
  }
  std::string text;
  for (const auto& c : basis) text += format_cochain(c);
  emit(out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// invariants

struct DiagramSource {
  std::string pd, pd_file, braid, family;
  int strands = 2;
  bool mirror = false;
};

std::pair<Diagram, std::string> load_diagram(const DiagramSource& s) {
  int given = !s.pd.empty() + !s.pd_file.empty() + !s.braid.empty() + !s.family.empty();
  if (given > 1) throw UsageError("give exactly one of --pd, --pd-file, --braid, --family");
  Diagram d;
  std::string name;
  if (!s.pd_file.empty()) {
    d = build_diagram(parse_pd(slurp(s.pd_file)));
    name = fs::path(s.pd_file).stem().string();
  } else if (!s.braid.empty()) {
    d = braid_closure(parse_braid(s.braid, s.strands));
    name = "braid(" + s.braid + ")";
  } else if (!s.family.empty()) {
    d = family(s.family);
    name = s.family;
  } else {
    d = build_diagram(parse_pd(s.pd));
    name = s.pd.empty() ? "unknot" : "pd";
  }
  if (s.mirror) d = mirror(d);
  return {d, name};
}

struct InvariantResult {
  GroupRingElement value;
  std::size_t colorings = 0;
};

InvariantResult evaluate(const Diagram& d, const Quandle& x, const Cochain& c, bool shadow) {
  if (shadow && c.degree() != 3)
    throw ValidationError("--shadow needs a 3-cocycle, got degree " + std::to_string(c.degree()));
  if (!shadow && c.degree() != 2)
    throw ValidationError("the cocycle invariant needs a 2-cocycle, got degree " + std::to_string(c.degree()) +
                          " (use --shadow for 3-cocycles)");
  InvariantResult r;
  r.value = shadow ? shadow_invariant(d, x, c) : cocycle_invariant(d, x, c);
  r.colorings = colorings(d, x).size();
  return r;
}

json value_json(const GroupRingElement& v) {
  json arr = json::array();
  for (auto [e, c] : v.terms()) arr.push_back({{"exp", e}, {"coeff", c}});
  return arr;
}

json result_json(const std::string& name, const std::string& quandle, const std::string& cocycle, bool shadow,
                 bool mirror, const InvariantResult& r) {
  return json{{"name", name},
              {"quandle", quandle},
              {"cocycle", cocycle},
              {"shadow", shadow},
              {"mirror", mirror},
              {"modulus", r.value.group().order()},
              {"value", value_json(r.value)},
              {"text", groupring_format(r.value)},
              {"colorings", r.colorings}};
}

struct InvariantOptions {
  DiagramSource diagram;
  std::string quandle, cocycle, format = "text", name;
  bool shadow = false;
};

int cmd_invariant(const InvariantOptions& o) {
  auto [d, name] = load_diagram(o.diagram);
  auto x = load_quandle(o.quandle);
  auto c = load_cocycle(o.cocycle);
  auto r = evaluate(d, x, c, o.shadow);
  if (o.format == "json")
    std::cout << result_json(o.name.empty() ? name : o.name, fs::path(o.quandle).filename().string(), o.cocycle,
                             o.shadow, o.diagram.mirror, r)
                     .dump(2)
              << "\n";
  else
    std::cout << groupring_format(r.value) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// diagram

int cmd_diagram(const DiagramSource& s, bool export_only) {
  auto [d, name] = load_diagram(s);
  if (export_only) {
    std::cout << format_pd(d.pd) << "\n";
    return 0;
  }
  std::cout << "name: " << name << "\n"
            << "crossings: " << d.crossings.size() << "\n"
            << "edges: " << d.edges.size() << "\n"
            << "arcs: " << d.arc_count << "\n"
            << "regions: " << d.region_count << "\n"
            << "unbounded region: " << d.unbounded_region << "\n"
            << "components: " << d.component_count << "\n"
            << "writhe: " << d.writhe() << "\n"
            << "signs:";
  for (int v : d.signs()) std::cout << ' ' << (v > 0 ? '+' : '-');
  std::cout << "\npd: " << format_pd(d.pd) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// table

struct TableRow {
  std::string name, pd, value, error;
  std::size_t colorings = 0;
  bool cached = false;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<TableRow> read_table(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::vector<TableRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("name,", 0) == 0) continue;
    }
    TableRow r;
    auto comma = line.find(',');
    r.name = line.substr(0, comma);
    r.pd = comma == std::string::npos ? "" : line.substr(comma + 1);
    r.pd.erase(0, r.pd.find_first_not_of(" \t"));
    if (r.pd.size() >= 2 && r.pd.front() == '"' && r.pd.back() == '"') r.pd = r.pd.substr(1, r.pd.size() - 2);
    if (comma == std::string::npos) r.error = "row has no pd column";
    rows.push_back(std::move(r));
  }
  return rows;
}

struct TableOptions {
  std::string input, quandle, cocycle, out, cache_dir;
  bool shadow = false, mirror = false, verbose = false;
  int jobs = 1;
};

int cmd_table(const TableOptions& o) {
  auto x = load_quandle(o.quandle);
  auto c = load_cocycle(o.cocycle);
  auto rows = read_table(o.input);
  std::string cache = o.cache_dir;
  if (cache.empty()) {
    const char* env = std::getenv("CACHE_DIR");
    cache = env && *env ? env : ".qcoc-cache";
  }
  fs::create_directories(cache);
  const std::string context = format_qnd(x) + "\n" + format_cochain(c) + "\nshadow=" + (o.shadow ? "1" : "0") +
                              "\nmirror=" + (o.mirror ? "1" : "0") + "\n";
  std::atomic<std::size_t> next{0}, hits{0};
  std::mutex io;

  auto work = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      TableRow& r = rows[i];
      if (!r.error.empty()) continue;
      try {
        auto pd = parse_pd(r.pd);
        const std::string digest = sha256_hex(std::string("qcoc-table-v1\n") + format_pd(pd) + "\n" + context);
        const fs::path record = fs::path(cache) / (digest + ".json");
        if (fs::exists(record)) {
          try {
            auto j = json::parse(slurp(record.string()));
            if (j.at("digest") == digest) {
              r.value = j.at("result").at("text").get<std::string>();
              r.colorings = j.at("result").at("colorings").get<std::size_t>();
              r.cached = true;
              ++hits;
              continue;
            }
          } catch (const std::exception&) {
            // unreadable record: recompute and overwrite
          }
        }
        Diagram d = build_diagram(pd);
        if (o.mirror) d = mirror(d);
        auto res = evaluate(d, x, c, o.shadow);
        r.value = groupring_format(res.value);
        r.colorings = res.colorings;
        json rec{{"digest", digest},
                 {"result", result_json(r.name, fs::path(o.quandle).filename().string(), o.cocycle, o.shadow, o.mirror, res)},
                 {"tool_version", qcoc::version},
                 {"timestamp", utc_timestamp()}};
        fs::path tmp = record;
        tmp += ".tmp." + std::to_string(i) + "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
        write_file(tmp.string(), rec.dump(2) + "\n");
        fs::rename(tmp, record);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      if (o.verbose) {
        std::lock_guard<std::mutex> lock(io);
        std::cerr << "computed " << r.name << "\n";
      }
    }
  };
  const int jobs = std::max(1, o.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "name,value,colorings,error\n";
  bool failed = false;
  for (const auto& r : rows) {
    failed |= !r.error.empty();
    csv << csv_field(r.name) << ',' << csv_field(r.value) << ',' << (r.error.empty() ? std::to_string(r.colorings) : "")
        << ',' << csv_field(r.error) << "\n";
  }
  emit(o.out, csv.str());
  if (o.verbose) std::cerr << "cache hits: " << hits.load() << "/" << rows.size() << "\n";
  return failed ? 1 : 0;
}

// ---------------------------------------------------------------------------
// extensions

int cmd_extend(const std::string& quandle, const std::string& group, const std::string& cocycle, const std::string& out) {
  auto x = load_quandle(quandle);
  auto phi = load_group_cocycle(cocycle);
  if (!group.empty() && !(FiniteAbelianGroup::parse(group) == phi.group()))
    throw ValidationError("--group " + group + " does not match the cocycle's coefficients " + phi.group().to_string());
  emit(out, format_qnd(extend(x, phi)));
  return 0;
}

struct ObstructionOptions {
  std::string quandle, ses, ses_file, section, cocycle, theta_out, witness_out, lift_out;
};

int cmd_obstruction(const ObstructionOptions& o) {
  auto x = load_quandle(o.quandle);
  auto phi = load_group_cocycle(o.cocycle);
  if (o.ses.empty() == o.ses_file.empty()) throw UsageError("give exactly one of --ses and --ses-file");
  auto ses = o.ses_file.empty() ? ShortExactSequence::parse_shorthand(o.ses) : read_ses(o.ses_file);
  auto s = o.section.empty() ? Section::minimal(ses) : Section::parse(o.section, ses);
  auto ob = obstruction_cocycle(x, phi, ses, s);
  std::cout << "sequence: 0 -> " << ses.n.to_string() << " -> " << ses.g.to_string() << " -> " << ses.a.to_string()
            << " -> 0\n";
  std::cout << "section:";
  for (std::size_t a = 0; a < s.table.size(); ++a) std::cout << ' ' << a << ':' << s.table[a];
  std::cout << "\ntheta is zero: " << (ob.theta.is_zero() ? "yes" : "no") << "\n"
            << "delta theta = 0: yes\n"
            << "theta vanishes on degenerate triples: yes\n"
            << "theta is a coboundary: " << (ob.xi ? "yes" : "no") << "\n";
  if (!o.theta_out.empty()) write_file(o.theta_out, format_group_cochain(ob.theta));
  if (ob.xi) {
    if (!o.witness_out.empty()) write_file(o.witness_out, format_group_cochain(*ob.xi));
    auto lift = lift_quandle(x, phi, ses, s, *ob.xi);
    std::cout << "lift: quandle of order " << lift.order() << " (axioms verified, p x id is a homomorphism)\n";
    if (!o.lift_out.empty()) write_file(o.lift_out, format_qnd(lift));
  } else {
    std::cout << "lift: none (the obstruction class is nonzero)\n";
  }
  return 0;
}

void add_diagram_options(CLI::App* cmd, DiagramSource& s) {
  cmd->add_option("--pd", s.pd, "PD code, e.g. \"X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]\"");
  cmd->add_option("--pd-file", s.pd_file, "file holding a PD code");
  cmd->add_option("--braid", s.braid, "braid word closed up, e.g. \"1 1 1\"");
  cmd->add_option("--strands", s.strands, "number of braid strands")->capture_default_str();
  cmd->add_option("--family", s.family, "torus2:n, torus3:n, doubled:n or tprime:n");
  cmd->add_flag("--mirror", s.mirror, "mirror the diagram (swap every crossing)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quandle cohomology, cocycle knot invariants and quandle extensions"};
  app.set_version_flag("--version", std::string(qcoc::version));
  app.require_subcommand(1);

  // quandle
  auto* quandle = app.add_subcommand("quandle", "build, check and compare quandles");
  quandle->require_subcommand(1);
  std::vector<std::string> make_args;
  std::string make_out;
  int nfold = 1;
  auto* make = quandle->add_subcommand("make", "write a quandle table (trivial n | dihedral n | alexander m h | conj file | quaternion)");
  make->add_option("args", make_args, "kind and parameters")->required();
  make->add_option("-o,--out", make_out, "output .qnd file (default stdout)");
  make->add_option("--nfold", nfold, "n for the n-fold conjugation quandle")->capture_default_str();
  std::string check_path;
  auto* check = quandle->add_subcommand("check", "report quandle axioms for a table");
  check->add_option("file", check_path)->required();
  std::string iso_a, iso_b;
  auto* iso = quandle->add_subcommand("iso", "find an isomorphism between two quandles");
  iso->add_option("a", iso_a)->required();
  iso->add_option("b", iso_b)->required();
  std::string homs_a, homs_b;
  auto* homs = quandle->add_subcommand("homs", "list all homomorphisms");
  homs->add_option("dom", homs_a)->required();
  homs->add_option("cod", homs_b)->required();

  // homology
  HomologyOptions hopt;
  auto* hom = app.add_subcommand("homology", "quandle homology or cohomology groups");
  hom->add_option("--quandle", hopt.quandle)->required();
  hom->add_option("--theory", hopt.theory, "R, D or Q")->capture_default_str();
  hom->add_option("--degree", hopt.degree)->required();
  hom->add_option("--coeff", hopt.coeff, "Z or Z<m>")->capture_default_str();
  hom->add_flag("--cohomology", hopt.cohomology);
  hom->add_option("--max-degree", hopt.max_degree)->capture_default_str();
  hom->add_option("--memory-mb", hopt.memory_mb)->capture_default_str();

  // cocycles
  std::string coc_quandle, coc_out;
  int coc_degree = 2, coc_prime = 2;
  bool coc_nontrivial = false;
  auto* coc = app.add_subcommand("cocycles", "basis of quandle cocycles over F_p");
  coc->add_option("--quandle", coc_quandle)->required();
  coc->add_option("--degree", coc_degree)->required();
  coc->add_option("--prime", coc_prime)->required();
  coc->add_flag("--nontrivial", coc_nontrivial, "emit the first basis cocycle that is not a coboundary");
  coc->add_option("-o,--out", coc_out);

  // invariant
  InvariantOptions iopt;
  auto* inv = app.add_subcommand("invariant", "cocycle or shadow cocycle invariant of a diagram");
  add_diagram_options(inv, iopt.diagram);
  inv->add_option("--quandle", iopt.quandle)->required();
  inv->add_option("--cocycle", iopt.cocycle, "\"xi\" or a .coc file")->required();
  inv->add_flag("--shadow", iopt.shadow, "use shadow colorings and a 3-cocycle");
  inv->add_option("--format", iopt.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  inv->add_option("--name", iopt.name, "name recorded in json output");

  // diagram
  auto* dia = app.add_subcommand("diagram", "inspect or export diagrams");
  dia->require_subcommand(1);
  DiagramSource dinfo, dexport;
  auto* info = dia->add_subcommand("info", "crossings, arcs, regions and signs");
  add_diagram_options(info, dinfo);
  auto* exp = dia->add_subcommand("export", "print the PD code");
  add_diagram_options(exp, dexport);

  // table
  auto* table = app.add_subcommand("table", "batch invariants over a knot table");
  table->require_subcommand(1);
  TableOptions topt;
  auto* run = table->add_subcommand("run", "evaluate every row of a name,pd CSV");
  run->add_option("--input", topt.input)->required();
  run->add_option("--quandle", topt.quandle)->required();
  run->add_option("--cocycle", topt.cocycle)->required();
  run->add_flag("--shadow", topt.shadow);
  run->add_flag("--mirror", topt.mirror);
  run->add_option("--out", topt.out, "output CSV (default stdout)");
  run->add_option("--jobs", topt.jobs)->capture_default_str();
  run->add_option("--cache-dir", topt.cache_dir, "result cache (default $CACHE_DIR or .qcoc-cache)");
  run->add_flag("--verbose", topt.verbose);

  // extend
  std::string ext_quandle, ext_group, ext_cocycle, ext_out;
  auto* ext = app.add_subcommand("extend", "extension quandle E(X, A, phi)");
  ext->add_option("--quandle", ext_quandle)->required();
  ext->add_option("--group", ext_group, "coefficient group, e.g. 2 or 2,2");
  ext->add_option("--cocycle", ext_cocycle)->required();
  ext->add_option("-o,--out", ext_out);

  // obstruction
  ObstructionOptions oopt;
  auto* obs = app.add_subcommand("obstruction", "obstruction 3-cocycle for lifting an extension");
  obs->add_option("--quandle", oopt.quandle)->required();
  obs->add_option("--cocycle", oopt.cocycle)->required();
  obs->add_option("--ses", oopt.ses, "k,k*m,m for 0 -> Z_k -> Z_km -> Z_m -> 0");
  obs->add_option("--ses-file", oopt.ses_file, "sequence file with N, G, A, i, p lines");
  obs->add_option("--section", oopt.section, "e.g. 0:0,1:3 (default: smallest preimages)");
  obs->add_option("--theta-out", oopt.theta_out);
  obs->add_option("--witness-out", oopt.witness_out);
  obs->add_option("--lift-out", oopt.lift_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*make) return cmd_quandle_make(make_args, make_out, nfold);
    if (*check) return cmd_quandle_check(check_path);
    if (*iso) return cmd_quandle_iso(iso_a, iso_b);
    if (*homs) return cmd_quandle_homs(homs_a, homs_b);
    if (*hom) return cmd_homology(hopt);
    if (*coc) return cmd_cocycles(coc_quandle, coc_degree, coc_prime, coc_nontrivial, coc_out);
    if (*inv) return cmd_invariant(iopt);
    if (*info) return cmd_diagram(dinfo, false);
    if (*exp) return cmd_diagram(dexport, true);
    if (*run) return cmd_table(topt);
    if (*ext) return cmd_extend(ext_quandle, ext_group, ext_cocycle, ext_out);
    if (*obs) return cmd_obstruction(oopt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#include "ssmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssmc/oracle.hpp"
#include "ssmc/rng.hpp"
#include "ssmc/solver.hpp"

namespace ssmc {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Non-comment, non-blank lines with their 1-based numbers.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::istringstream ss(raw);
    Line line{no, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens[0] == "c") continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

long long parse_int(const std::string& tok, const std::string& source,
                    int line) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (...) {
    throw ParseError(source, line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(source, line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace

SsmcInstance parse_ssmc(std::istream& in, const std::string& source) {
  std::vector<Line> lines = read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "missing 'p ssmc' header");

  const Line& hdr = lines[0];
  if (hdr.tokens.size() != 6 || hdr.tokens[0] != "p" || hdr.tokens[1] != "ssmc")
    throw ParseError(source, hdr.number,
                     "expected header 'p ssmc <pairs> <arc-pairs> <k> <d>'");
  SsmcInstance inst;
  inst.n_pairs = static_cast<int>(parse_int(hdr.tokens[2], source, hdr.number));
  int declared_arcs =
      static_cast<int>(parse_int(hdr.tokens[3], source, hdr.number));
  inst.k = static_cast<int>(parse_int(hdr.tokens[4], source, hdr.number));
  inst.d = static_cast<int>(parse_int(hdr.tokens[5], source, hdr.number));
  if (inst.n_pairs < 0 || declared_arcs < 0 || inst.k < 0 || inst.d < 1)
    throw ParseError(source, hdr.number, "header values out of range");

  auto check_vertex = [&](long long v, int line) {
    if (v == 0 || v < -inst.n_pairs || v > inst.n_pairs)
      throw ParseError(source, line,
                       "vertex " + std::to_string(v) + " out of range");
    return static_cast<Vertex>(v);
  };

  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    if (ln.tokens[0] == "a") {
      if (ln.tokens.size() != 3)
        throw ParseError(source, ln.number, "expected 'a <u> <v>'");
      Vertex u = check_vertex(parse_int(ln.tokens[1], source, ln.number), ln.number);
      Vertex v = check_vertex(parse_int(ln.tokens[2], source, ln.number), ln.number);
      inst.arc_pairs.push_back({u, v});
    } else if (ln.tokens[0] == "t") {
      if (ln.tokens.size() < 2)
        throw ParseError(source, ln.number, "terminal line with no vertices");
      VertexSet member;
      for (size_t j = 1; j < ln.tokens.size(); ++j)
        member.push_back(
            check_vertex(parse_int(ln.tokens[j], source, ln.number), ln.number));
      normalize(member);
      if (static_cast<int>(member.size()) > inst.d)
        throw ParseError(source, ln.number,
                         "terminal set larger than declared d");
      inst.family.push_back(std::move(member));
    } else {
      throw ParseError(source, ln.number,
                       "unknown line tag '" + ln.tokens[0] + "'");
    }
  }
  if (static_cast<int>(inst.arc_pairs.size()) != declared_arcs)
    throw ParseError(source, lines.back().number,
                     "header declares " + std::to_string(declared_arcs) +
                         " arc pairs, file has " +
                         std::to_string(inst.arc_pairs.size()));
  return inst;
}

std::string emit_ssmc(const SsmcInstance& inst) {
  std::string out = "p ssmc " + std::to_string(inst.n_pairs) + " " +
                    std::to_string(inst.arc_pairs.size()) + " " +
                    std::to_string(inst.k) + " " + std::to_string(inst.d) + "\n";
  for (auto [u, v] : inst.arc_pairs)
    out += "a " + std::to_string(u) + " " + std::to_string(v) + "\n";
  for (const VertexSet& member : inst.family) {
    out += "t";
    for (Vertex v : member) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

CnfFormula parse_dimacs_cnf(std::istream& in, const std::string& source) {
  std::vector<Line> lines = read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "missing 'p cnf' header");
  const Line& hdr = lines[0];
  if (hdr.tokens.size() != 4 || hdr.tokens[0] != "p" || hdr.tokens[1] != "cnf")
    throw ParseError(source, hdr.number, "expected header 'p cnf <vars> <clauses>'");
  CnfFormula f;
  f.n_vars = static_cast<int>(parse_int(hdr.tokens[2], source, hdr.number));
  int declared =
      static_cast<int>(parse_int(hdr.tokens[3], source, hdr.number));
  if (f.n_vars < 0 || declared < 0)
    throw ParseError(source, hdr.number, "header values out of range");

  std::vector<int> clause;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    for (const std::string& tok : ln.tokens) {
      long long lit = parse_int(tok, source, ln.number);
      if (lit == 0) {
        if (clause.empty())
          throw ParseError(source, ln.number, "empty clause");
        f.clauses.push_back(clause);
        clause.clear();
        continue;
      }
      if (lit < -f.n_vars || lit > f.n_vars)
        throw ParseError(source, ln.number,
                         "literal " + std::to_string(lit) + " out of range");
      clause.push_back(static_cast<int>(lit));
    }
  }
  if (!clause.empty())
    throw ParseError(source, lines.back().number, "clause not terminated by 0");
  if (static_cast<int>(f.clauses.size()) != declared)
    throw ParseError(source, lines.back().number,
                     "header declares " + std::to_string(declared) +
                         " clauses, file has " +
                         std::to_string(f.clauses.size()));
  return f;
}

std::string emit_dimacs_cnf(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.n_vars) + " " +
                    std::to_string(f.clauses.size()) + "\n";
  for (const auto& c : f.clauses) {
    for (int lit : c) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

UndirectedGraph parse_dimacs_graph(std::istream& in, const std::string& source) {
  std::vector<Line> lines = read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "missing 'p edge' header");
  const Line& hdr = lines[0];
  if (hdr.tokens.size() != 4 || hdr.tokens[0] != "p" || hdr.tokens[1] != "edge")
    throw ParseError(source, hdr.number, "expected header 'p edge <n> <m>'");
  UndirectedGraph g;
  g.n = static_cast<int>(parse_int(hdr.tokens[2], source, hdr.number));
  int declared =
      static_cast<int>(parse_int(hdr.tokens[3], source, hdr.number));
  if (g.n < 0 || declared < 0)
    throw ParseError(source, hdr.number, "header values out of range");

  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    if (ln.tokens[0] != "e" || ln.tokens.size() != 3)
      throw ParseError(source, ln.number, "expected 'e <u> <v>'");
    long long u = parse_int(ln.tokens[1], source, ln.number);
    long long v = parse_int(ln.tokens[2], source, ln.number);
    if (u < 1 || u > g.n || v < 1 || v > g.n)
      throw ParseError(source, ln.number, "edge endpoint out of range");
    if (u == v) throw ParseError(source, ln.number, "self-loop");
    g.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  if (static_cast<int>(g.edges.size()) != declared)
    throw ParseError(source, lines.back().number,
                     "header declares " + std::to_string(declared) +
                         " edges, file has " + std::to_string(g.edges.size()));
  return g;
}

std::string emit_dimacs_graph(const UndirectedGraph& g) {
  std::string out = "p edge " + std::to_string(g.n) + " " +
                    std::to_string(g.edges.size()) + "\n";
  for (auto [u, v] : g.edges)
    out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

SsmcInstance gen_ssmc(const GenSsmcParams& p) {
  if (p.pairs < 1 || p.arc_pairs < 0 || p.tsets < 0 || p.d < 1 || p.k < 0)
    throw MalformedInputError("gen_ssmc: bad size parameters");
  SplitMix64 rng(p.seed);
  auto rand_vertex = [&]() {
    return vertex_of_dense(static_cast<int>(rng.below(2 * p.pairs)));
  };
  SsmcInstance inst;
  inst.n_pairs = p.pairs;
  inst.k = p.k;
  inst.d = p.d;
  for (int i = 0; i < p.arc_pairs; ++i) {
    Vertex u = rand_vertex();
    Vertex v = rand_vertex();
    inst.arc_pairs.push_back({u, v});
  }
  int max_size = std::min(p.d, 2 * p.pairs);
  for (int i = 0; i < p.tsets; ++i) {
    int size = 1 + static_cast<int>(rng.below(max_size));
    VertexSet member;
    while (static_cast<int>(member.size()) < size) {
      Vertex v = rand_vertex();
      if (!set_contains(member, v)) {
        member.push_back(v);
        normalize(member);
      }
    }
    inst.family.push_back(std::move(member));
  }
  return inst;
}

CnfFormula gen_cnf(std::uint64_t seed, int vars, int clauses) {
  if (vars < 2 || clauses < 0)
    throw MalformedInputError("gen_cnf: bad size parameters");
  SplitMix64 rng(seed);
  CnfFormula f;
  f.n_vars = vars;
  for (int i = 0; i < clauses; ++i) {
    int v1 = 1 + static_cast<int>(rng.below(vars));
    int v2 = v1;
    while (v2 == v1) v2 = 1 + static_cast<int>(rng.below(vars));
    int l1 = rng.below(2) ? v1 : -v1;
    int l2 = rng.below(2) ? v2 : -v2;
    f.clauses.push_back({l1, l2});
  }
  return f;
}

UndirectedGraph gen_graph(std::uint64_t seed, int n, double edge_prob) {
  if (n < 0 || edge_prob < 0.0 || edge_prob > 1.0)
    throw MalformedInputError("gen_graph: bad size parameters");
  SplitMix64 rng(seed);
  UndirectedGraph g;
  g.n = n;
  auto threshold =
      static_cast<std::uint64_t>(std::llround(edge_prob * 1000000000.0));
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (rng.below(1000000000ull) < threshold) g.edges.push_back({u, v});
  return g;
}

namespace {

struct CliState {
  std::string file;
  std::string solution_file;
  int k = 0;
  bool brute = false;
  bool want_stats = false;
  bool want_json = false;
};

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot open '" + path + "'");
  return in;
}

void print_stats(const SolveStats& st, std::ostream& err) {
  err << "stats: nodes=" << st.nodes << " leaves=" << st.leaves
      << " rule_applications=" << st.rule_applications
      << " component_calls=" << st.component_calls
      << " max_depth=" << st.max_depth << " wall_ms=" << st.wall_ms << "\n";
}

nlohmann::json stats_json(const SolveStats& st) {
  return {{"nodes", st.nodes},
          {"leaves", st.leaves},
          {"rule_applications", st.rule_applications},
          {"component_calls", st.component_calls},
          {"max_depth", st.max_depth},
          {"wall_time_ms", st.wall_ms}};
}

int finish(const CliState& cli, bool yes,
           const std::vector<std::string>& lines, const nlohmann::json& sol,
           const SolveStats& st, std::ostream& out, std::ostream& err) {
  if (cli.want_json) {
    nlohmann::json record = {{"answer", yes ? "YES" : "NO"},
                             {"stats", stats_json(st)}};
    if (yes) record["solution"] = sol;
    out << record.dump(2) << "\n";
  } else {
    out << (yes ? "YES" : "NO") << "\n";
    if (yes)
      for (const auto& line : lines) out << line << "\n";
  }
  if (cli.want_stats && !cli.want_json) print_stats(st, err);
  return yes ? 0 : 1;
}

int cmd_ssmc(const CliState& cli, std::ostream& out, std::ostream& err) {
  auto in = open_or_throw(cli.file);
  SsmcInstance inst = parse_ssmc(in, cli.file);
  SkewGraph g = inst.build_graph();
  SolveStats st;
  std::optional<ArcSet> sol;
  if (cli.brute) {
    sol = bf_multicut(g, inst.family, cli.k);
  } else {
    ExplicitOracle oracle(inst.family);
    sol = solve(g, oracle, cli.k, &st);
  }
  std::vector<std::string> lines;
  nlohmann::json jsol = nlohmann::json::array();
  if (sol) {
    internal_check(validate_multicut(g, inst.family, *sol),
                   "solver produced an invalid multicut");
    for (ArcId a : *sol) {
      lines.push_back("a " + std::to_string(g.tail(a)) + " " +
                      std::to_string(g.head(a)));
      jsol.push_back({g.tail(a), g.head(a)});
    }
  }
  return finish(cli, sol.has_value(), lines, jsol, st, out, err);
}

int cmd_a2sat(const CliState& cli, std::ostream& out, std::ostream& err) {
  auto in = open_or_throw(cli.file);
  CnfFormula f = parse_dimacs_cnf(in, cli.file);
  SolveStats st;
  std::optional<std::vector<int>> sol =
      cli.brute ? bf_almost2sat(f, cli.k) : almost_2sat(f, cli.k, &st);
  std::vector<std::string> lines;
  nlohmann::json jsol = nlohmann::json::array();
  if (sol) {
    internal_check(two_sat_satisfiable(remove_clauses(f, *sol)),
                   "clause deletion set leaves an unsatisfiable formula");
    for (int c : *sol) {
      lines.push_back(std::to_string(c + 1));  // 1-based clause indices
      jsol.push_back(c + 1);
    }
  }
  return finish(cli, sol.has_value(), lines, jsol, st, out, err);
}

int cmd_oct(const CliState& cli, std::ostream& out, std::ostream& err) {
  auto in = open_or_throw(cli.file);
  UndirectedGraph g = parse_dimacs_graph(in, cli.file);
  SolveStats st;
  std::optional<std::vector<int>> sol =
      cli.brute ? bf_bipartization(g, cli.k, BipartizationMode::Vertex)
                : odd_cycle_transversal(g, cli.k, &st);
  std::vector<std::string> lines;
  nlohmann::json jsol = nlohmann::json::array();
  if (sol) {
    internal_check(is_bipartite(g, *sol, {}), "deletion set is not a transversal");
    for (int v : *sol) {
      lines.push_back(std::to_string(v));
      jsol.push_back(v);
    }
  }
  return finish(cli, sol.has_value(), lines, jsol, st, out, err);
}

int cmd_ebip(const CliState& cli, std::ostream& out, std::ostream& err) {
  auto in = open_or_throw(cli.file);
  UndirectedGraph g = parse_dimacs_graph(in, cli.file);
  SolveStats st;
  std::optional<std::vector<int>> sol =
      cli.brute ? bf_bipartization(g, cli.k, BipartizationMode::Edge)
                : edge_bipartization(g, cli.k, &st);
  std::vector<std::string> lines;
  nlohmann::json jsol = nlohmann::json::array();
  if (sol) {
    internal_check(is_bipartite(g, {}, *sol), "deletion set is not a bipartizer");
    for (int e : *sol) {
      lines.push_back(std::to_string(g.edges[e].first) + " " +
                      std::to_string(g.edges[e].second));
      jsol.push_back({g.edges[e].first, g.edges[e].second});
    }
  }
  return finish(cli, sol.has_value(), lines, jsol, st, out, err);
}

int cmd_qhorn(const CliState& cli, std::ostream& out, std::ostream& err) {
  auto in = open_or_throw(cli.file);
  CnfFormula f = parse_dimacs_cnf(in, cli.file);
  SolveStats st;
  std::optional<std::vector<int>> sol =
      cli.brute ? bf_qhorn_backdoor(f, cli.k) : qhorn_backdoor(f, cli.k, &st);
  std::vector<std::string> lines;
  nlohmann::json jsol = nlohmann::json::array();
  if (sol) {
    internal_check(is_qhorn(remove_variables(f, *sol)),
                   "residual formula is not q-Horn");
    for (int v : *sol) {
      lines.push_back(std::to_string(v));
      jsol.push_back(v);
    }
  }
  return finish(cli, sol.has_value(), lines, jsol, st, out, err);
}

int cmd_verify(const CliState& cli, std::ostream& out, std::ostream& err) {
  auto in = open_or_throw(cli.file);
  SsmcInstance inst = parse_ssmc(in, cli.file);
  SkewGraph g = inst.build_graph();

  auto sf = open_or_throw(cli.solution_file);
  std::string first;
  if (!std::getline(sf, first))
    throw MalformedInputError("empty solution file");
  if (first == "NO") {
    err << "solution file claims NO; nothing to verify\n";
    return 2;
  }
  if (first != "YES")
    throw MalformedInputError("solution file must start with YES or NO");

  // Map printed endpoint pairs back to arc ids, lowest unused arc first.
  // Parallel copies are interchangeable for the cut condition.
  std::map<std::pair<Vertex, Vertex>, std::vector<ArcId>> by_endpoints;
  for (ArcId a = 0; a < g.arc_count(); ++a)
    by_endpoints[{g.tail(a), g.head(a)}].push_back(a);

  ArcSet chosen;
  std::string line;
  int line_no = 1;
  bool ok = true;
  while (std::getline(sf, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    long long u, v;
    if (tag != "a" || !(ss >> u >> v))
      throw ParseError(cli.solution_file, line_no, "expected 'a <u> <v>'");
    auto it = by_endpoints.find(
        {static_cast<Vertex>(u), static_cast<Vertex>(v)});
    if (it == by_endpoints.end() || it->second.empty()) {
      ok = false;
      break;
    }
    chosen.push_back(it->second.front());
    it->second.erase(it->second.begin());
  }
  std::sort(chosen.begin(), chosen.end());
  ok = ok && static_cast<int>(chosen.size()) <= 2 * inst.k &&
       validate_multicut(g, inst.family, chosen);
  out << (ok ? "VALID" : "INVALID") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"skew-symmetric multicut solver and front-ends"};
  app.require_subcommand(1);

  CliState cli;

  auto add_solve = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("file", cli.file, "instance file")->required();
    sub->add_option("-k,--budget", cli.k, "deletion budget")->required();
    sub->add_flag("--brute-force", cli.brute, "use the exhaustive reference solver");
    sub->add_flag("--stats", cli.want_stats, "print search statistics to stderr");
    sub->add_flag("--json", cli.want_json, "emit a JSON record instead of text");
    return sub;
  };
  CLI::App* c_ssmc = add_solve("ssmc", "solve a d-skew-symmetric multicut instance");
  CLI::App* c_a2sat = add_solve("a2sat", "almost 2-SAT clause deletion");
  CLI::App* c_oct = add_solve("oct", "odd cycle transversal");
  CLI::App* c_ebip = add_solve("ebip", "edge bipartization");
  CLI::App* c_qhorn = add_solve("qhorn", "deletion q-Horn backdoor set");

  CLI::App* c_verify = app.add_subcommand("verify", "check a solution file");
  c_verify->add_option("instance", cli.file, "ssmc instance file")->required();
  c_verify->add_option("solution", cli.solution_file, "solver output file")
      ->required();

  CLI::App* c_gen = app.add_subcommand("gen", "emit a generated instance");
  std::string kind;
  GenSsmcParams gp;
  int gen_vars = 5, gen_clauses = 9, gen_n = 8;
  double gen_prob = 0.4;
  std::uint64_t seed = 1;
  c_gen->add_option("kind", kind, "ssmc | cnf | graph")
      ->required()
      ->check(CLI::IsMember({"ssmc", "cnf", "graph"}));
  c_gen->add_option("--seed", seed, "generator seed");
  c_gen->add_option("--pairs", gp.pairs, "vertex pairs (ssmc)");
  c_gen->add_option("--arc-pairs", gp.arc_pairs, "arc pairs (ssmc)");
  c_gen->add_option("--tsets", gp.tsets, "terminal sets (ssmc)");
  c_gen->add_option("-d,--set-size", gp.d, "terminal set size bound (ssmc)");
  c_gen->add_option("-k,--budget", gp.k, "budget written to the header (ssmc)");
  c_gen->add_option("--vars", gen_vars, "variables (cnf)");
  c_gen->add_option("--clauses", gen_clauses, "clauses (cnf)");
  c_gen->add_option("-n,--vertices", gen_n, "vertices (graph)");
  c_gen->add_option("--prob", gen_prob, "edge probability (graph)");

  std::vector<const char*> argv;
  argv.push_back("ssmc");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_ssmc->parsed()) return cmd_ssmc(cli, out, err);
    if (c_a2sat->parsed()) return cmd_a2sat(cli, out, err);
    if (c_oct->parsed()) return cmd_oct(cli, out, err);
    if (c_ebip->parsed()) return cmd_ebip(cli, out, err);
    if (c_qhorn->parsed()) return cmd_qhorn(cli, out, err);
    if (c_verify->parsed()) return cmd_verify(cli, out, err);
    if (c_gen->parsed()) {
      if (kind == "ssmc") {
        gp.seed = seed;
        out << emit_ssmc(gen_ssmc(gp));
      } else if (kind == "cnf") {
        out << emit_dimacs_cnf(gen_cnf(seed, gen_vars, gen_clauses));
      } else {
        out << emit_dimacs_graph(gen_graph(seed, gen_n, gen_prob));
      }
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ssmc

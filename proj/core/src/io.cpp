#include "preserver/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "preserver/errors.hpp"

namespace preserver {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw ParseError("write to " + path + " failed");
}

// Shortest round-trip decimal form, locale independent.
std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::logic_error("double formatting failed");
  return std::string(buf.data(), ptr);
}

// Tokenized line with its 1-based number; comments and blanks dropped.
struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.resize(hash);
    std::istringstream split(raw);
    Line line;
    line.number = number;
    std::string token;
    while (split >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(const std::string& origin, const Line& line,
               const std::string& token, const char* what) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    fail(origin, line.number,
         std::string("malformed ") + what + " \"" + token + "\"");
  return value;
}

double parse_double(const std::string& origin, const Line& line,
                    const std::string& token, const char* what) {
  double value{};
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    fail(origin, line.number,
         std::string("malformed ") + what + " \"" + token + "\"");
  return value;
}

void expect_tokens(const std::string& origin, const Line& line,
                   std::size_t count) {
  if (line.tokens.size() != count)
    fail(origin, line.number,
         "expected " + std::to_string(count) + " fields, got " +
             std::to_string(line.tokens.size()));
}

}  // namespace

std::string write_instance_string(const Instance& instance) {
  const WeightedGraph& g = instance.graph;
  std::ostringstream out;
  out << "cspdp " << (g.directed() ? "directed" : "undirected") << ' '
      << g.num_nodes() << ' ' << g.num_edges() << ' ' << instance.pairs.size()
      << '\n';
  for (const Edge& e : g.edges())
    out << "e " << e.tail << ' ' << e.head << ' ' << e.weight << '\n';
  for (const Pair& p : instance.pairs) out << "q " << p.s << ' ' << p.t << '\n';
  return std::move(out).str();
}

void write_instance(const Instance& instance, const std::string& path) {
  write_file(path, write_instance_string(instance));
}

Instance parse_instance_string(const std::string& text,
                               const std::string& origin) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(origin + ": empty instance");
  const Line& header = lines[0];
  expect_tokens(origin, header, 5);
  if (header.tokens[0] != "cspdp")
    fail(origin, header.number, "expected header tag \"cspdp\"");
  bool directed;
  if (header.tokens[1] == "directed")
    directed = true;
  else if (header.tokens[1] == "undirected")
    directed = false;
  else
    fail(origin, header.number,
         "orientation must be \"directed\" or \"undirected\"");
  NodeId n = parse_number<NodeId>(origin, header, header.tokens[2], "node count");
  EdgeId m = parse_number<EdgeId>(origin, header, header.tokens[3], "edge count");
  auto p = parse_number<std::int64_t>(origin, header, header.tokens[4],
                                      "pair count");
  if (n < 0 || m < 0 || p < 0)
    fail(origin, header.number, "negative count in header");
  if (static_cast<std::int64_t>(lines.size()) != 1 + m + p)
    throw ParseError(origin + ": expected " + std::to_string(1 + m + p) +
                     " records, got " + std::to_string(lines.size()));

  std::vector<Edge> edges;
  edges.reserve(m);
  for (EdgeId i = 0; i < m; ++i) {
    const Line& line = lines[1 + i];
    expect_tokens(origin, line, 4);
    if (line.tokens[0] != "e")
      fail(origin, line.number, "expected an edge record");
    Edge e;
    e.tail = parse_number<NodeId>(origin, line, line.tokens[1], "node id");
    e.head = parse_number<NodeId>(origin, line, line.tokens[2], "node id");
    e.weight = parse_number<Weight>(origin, line, line.tokens[3], "weight");
    if (e.weight < 0) fail(origin, line.number, "negative weight");
    edges.push_back(e);
  }
  Instance instance;
  instance.graph = WeightedGraph(directed, n, std::move(edges));
  for (std::int64_t i = 0; i < p; ++i) {
    const Line& line = lines[1 + m + i];
    expect_tokens(origin, line, 3);
    if (line.tokens[0] != "q")
      fail(origin, line.number, "expected a demand pair record");
    Pair pair;
    pair.s = parse_number<NodeId>(origin, line, line.tokens[1], "node id");
    pair.t = parse_number<NodeId>(origin, line, line.tokens[2], "node id");
    instance.pairs.push_back(pair);
  }
  normalize_instance(instance);
  return instance;
}

Instance parse_instance(const std::string& path) {
  return parse_instance_string(read_file(path), path);
}

std::string instance_hash(const Instance& instance) {
  std::string text = write_instance_string(instance);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[i] = digits[h & 0xf];
    h >>= 4;
  }
  return hex;
}

std::string write_solution_string(const SolutionFile& file) {
  std::ostringstream out;
  out << "cspdp-solution 1\n";
  out << "instance " << file.hash << '\n';
  out << "algorithm " << file.algorithm << '\n';
  out << "epsilon " << format_double(file.epsilon) << '\n';
  out << "seed " << file.seed << '\n';
  out << "trials " << file.trials << '\n';
  out << "objective " << file.solution.objective << '\n';
  out << "upper " << file.solution.upper_bound << '\n';
  out << "cost " << file.solution.cost << '\n';
  out << "feasible " << (file.feasible ? 1 : 0) << '\n';
  out << "H " << file.solution.edges.size();
  for (EdgeId e : file.solution.edges) out << ' ' << e;
  out << '\n';
  for (const Path& w : file.solution.witnesses) {
    out << "path " << w.nodes.front() << ' ' << w.nodes.back() << ' '
        << w.nodes.size();
    for (NodeId v : w.nodes) out << ' ' << v;
    out << '\n';
  }
  return std::move(out).str();
}

void write_solution(const SolutionFile& file, const std::string& path) {
  write_file(path, write_solution_string(file));
}

namespace {

// Witness edges are not stored; rebind each step to the cheapest matching
// edge of H (then lowest id). A shortest path cannot get shorter this way,
// so its length is unchanged.
Path resolve_witness(const Instance& instance,
                     const std::vector<EdgeId>& edges,
                     std::vector<NodeId> nodes, const std::string& origin,
                     int line_number) {
  Path path;
  path.nodes = std::move(nodes);
  const WeightedGraph& g = instance.graph;
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    NodeId a = path.nodes[i];
    NodeId b = path.nodes[i + 1];
    EdgeId best = -1;
    for (EdgeId e : edges) {
      const Edge& edge = g.edge(e);
      bool joins = (edge.tail == a && edge.head == b) ||
                   (!g.directed() && edge.tail == b && edge.head == a);
      if (!joins) continue;
      if (best < 0 || edge.weight < g.edge(best).weight) best = e;
    }
    if (best < 0)
      fail(origin, line_number,
           "witness step " + std::to_string(a) + " -> " + std::to_string(b) +
               " uses no edge of H");
    path.edges.push_back(best);
  }
  return path;
}

}  // namespace

SolutionFile parse_solution_string(const std::string& text,
                                   const Instance& instance,
                                   const std::string& origin) {
  std::vector<Line> lines = tokenize(text);
  std::size_t at = 0;
  auto next = [&](const char* tag, std::size_t min_tokens) -> const Line& {
    if (at >= lines.size())
      throw ParseError(origin + ": missing \"" + tag + "\" record");
    const Line& line = lines[at++];
    if (line.tokens[0] != tag)
      fail(origin, line.number,
           "expected \"" + std::string(tag) + "\", got \"" + line.tokens[0] +
               "\"");
    if (line.tokens.size() < min_tokens)
      fail(origin, line.number, "truncated record");
    return line;
  };

  SolutionFile file;
  {
    const Line& header = next("cspdp-solution", 2);
    if (header.tokens[1] != "1")
      fail(origin, header.number, "unsupported solution format version");
  }
  file.hash = next("instance", 2).tokens[1];
  file.algorithm = next("algorithm", 2).tokens[1];
  {
    const Line& line = next("epsilon", 2);
    file.epsilon = parse_double(origin, line, line.tokens[1], "epsilon");
  }
  {
    const Line& line = next("seed", 2);
    file.seed =
        parse_number<std::uint64_t>(origin, line, line.tokens[1], "seed");
  }
  {
    const Line& line = next("trials", 2);
    file.trials = parse_number<int>(origin, line, line.tokens[1], "trials");
  }
  Weight stated_objective, stated_upper, stated_cost;
  {
    const Line& line = next("objective", 2);
    stated_objective =
        parse_number<Weight>(origin, line, line.tokens[1], "objective");
  }
  {
    const Line& line = next("upper", 2);
    stated_upper =
        parse_number<Weight>(origin, line, line.tokens[1], "upper bound");
  }
  {
    const Line& line = next("cost", 2);
    stated_cost = parse_number<Weight>(origin, line, line.tokens[1], "cost");
  }
  {
    const Line& line = next("feasible", 2);
    file.feasible = line.tokens[1] == "1";
    if (line.tokens[1] != "0" && line.tokens[1] != "1")
      fail(origin, line.number, "feasible flag must be 0 or 1");
  }

  std::vector<EdgeId> edges;
  {
    const Line& line = next("H", 2);
    auto count =
        parse_number<std::int64_t>(origin, line, line.tokens[1], "edge count");
    if (static_cast<std::int64_t>(line.tokens.size()) != 2 + count)
      fail(origin, line.number, "edge id count does not match header");
    for (std::int64_t i = 0; i < count; ++i) {
      EdgeId e = parse_number<EdgeId>(origin, line, line.tokens[2 + i],
                                      "edge id");
      if (e < 0 || e >= instance.graph.num_edges())
        fail(origin, line.number, "edge id out of range");
      edges.push_back(e);
    }
  }

  std::vector<Path> witnesses;
  while (at < lines.size()) {
    const Line& line = next("path", 4);
    NodeId s = parse_number<NodeId>(origin, line, line.tokens[1], "node id");
    NodeId t = parse_number<NodeId>(origin, line, line.tokens[2], "node id");
    auto count =
        parse_number<std::int64_t>(origin, line, line.tokens[3], "node count");
    if (static_cast<std::int64_t>(line.tokens.size()) != 4 + count)
      fail(origin, line.number, "node count does not match record");
    std::vector<NodeId> nodes;
    for (std::int64_t i = 0; i < count; ++i)
      nodes.push_back(
          parse_number<NodeId>(origin, line, line.tokens[4 + i], "node id"));
    if (nodes.empty() || nodes.front() != s || nodes.back() != t)
      fail(origin, line.number, "witness endpoints do not match its nodes");
    witnesses.push_back(
        resolve_witness(instance, edges, std::move(nodes), origin, line.number));
  }
  if (!witnesses.empty() && witnesses.size() != instance.pairs.size())
    throw ParseError(origin + ": expected one witness per demand pair");

  if (file.hash != instance_hash(instance))
    throw ValidationError("solution was written for a different instance (hash " +
                          file.hash + ")");
  file.solution =
      finalize_solution(instance, std::move(edges), std::move(witnesses));
  if (file.solution.objective != stated_objective ||
      file.solution.upper_bound != stated_upper ||
      file.solution.cost != stated_cost)
    throw ValidationError(
        "stated objective does not match the edge list: stated " +
        std::to_string(stated_objective) + ", recomputed " +
        std::to_string(file.solution.objective));
  return file;
}

SolutionFile parse_solution(const std::string& path, const Instance& instance) {
  return parse_solution_string(read_file(path), instance, path);
}

void write_reduction_map(const ReductionMap& map, const std::string& path) {
  std::ostringstream out;
  for (EdgeId k = 0; k < map.original_edge_count; ++k)
    out << k << ' ' << map.entry_node(k) << ' ' << map.exit_node(k) << ' '
        << map.middle_edge(k) << '\n';
  write_file(path, std::move(out).str());
}

void write_layout(const GadgetLayout& layout, const std::string& path) {
  std::ostringstream out;
  for (std::size_t v = 0; v < layout.node_labels.size(); ++v)
    out << "node " << v << ' ' << layout.node_labels[v] << '\n';
  write_file(path, std::move(out).str());
}

std::string write_maxrep_string(const MaxRepInstance& maxrep) {
  std::ostringstream out;
  out << "maxrep " << maxrep.num_parts << ' ' << maxrep.part_size << ' '
      << maxrep.edges.size() << '\n';
  for (auto [v, u] : maxrep.edges) out << "b " << v << ' ' << u << '\n';
  return std::move(out).str();
}

void write_maxrep(const MaxRepInstance& maxrep, const std::string& path) {
  write_file(path, write_maxrep_string(maxrep));
}

MaxRepInstance parse_maxrep_string(const std::string& text,
                                   const std::string& origin) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(origin + ": empty bipartite instance");
  const Line& header = lines[0];
  expect_tokens(origin, header, 4);
  if (header.tokens[0] != "maxrep")
    fail(origin, header.number, "expected header tag \"maxrep\"");
  MaxRepInstance maxrep;
  maxrep.num_parts =
      parse_number<int>(origin, header, header.tokens[1], "part count");
  maxrep.part_size =
      parse_number<int>(origin, header, header.tokens[2], "part size");
  auto count = parse_number<std::int64_t>(origin, header, header.tokens[3],
                                          "edge count");
  if (static_cast<std::int64_t>(lines.size()) != 1 + count)
    throw ParseError(origin + ": expected " + std::to_string(count) +
                     " edge records");
  for (std::int64_t i = 0; i < count; ++i) {
    const Line& line = lines[1 + i];
    expect_tokens(origin, line, 3);
    if (line.tokens[0] != "b")
      fail(origin, line.number, "expected a bipartite edge record");
    int v = parse_number<int>(origin, line, line.tokens[1], "left vertex");
    int u = parse_number<int>(origin, line, line.tokens[2], "right vertex");
    maxrep.edges.emplace_back(v, u);
  }
  validate_maxrep(maxrep);
  return maxrep;
}

MaxRepInstance parse_maxrep(const std::string& path) {
  return parse_maxrep_string(read_file(path), path);
}

}  // namespace preserver

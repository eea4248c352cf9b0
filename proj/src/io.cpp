#include "matchcover/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace matchcover {

namespace {

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

std::uint64_t number(std::string_view tok, const std::string& src, std::size_t line) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(src, line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return x;
}

bool skip(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  return f;
}

}  // namespace

EdgeList read_edge_list(std::istream& in, const std::string& source) {
  EdgeList el;
  std::string line;
  std::size_t ln = 0;
  bool header = false;
  std::uint64_t m = 0;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, line)) {
    ++ln;
    if (skip(line)) continue;
    const auto tok = split(line);
    if (!header) {
      if (tok.size() == 3 && tok[2] == "multi")
        el.multi = true;
      else if (tok.size() != 2)
        throw ParseError(source, ln, "expected header 'n m' or 'n m multi'");
      el.n = number(tok[0], source, ln);
      m = number(tok[1], source, ln);
      header = true;
      el.edges.reserve(m);
      continue;
    }
    if (tok.size() != 2) throw ParseError(source, ln, "expected two integers");
    const auto a = number(tok[0], source, ln), b = number(tok[1], source, ln);
    if (a >= el.n || b >= el.n) throw ParseError(source, ln, "vertex out of range [0," + std::to_string(el.n) + ")");
    if (a == b) throw ParseError(source, ln, "self-loop");
    const Edge e = make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!el.multi && !seen.insert(encode_edge(e, el.n)).second)
      throw ParseError(source, ln, "duplicate edge in a simple graph (header lacks 'multi')");
    el.edges.push_back(e);
  }
  if (!header) throw ParseError(source, ln, "missing header 'n m'");
  if (el.edges.size() != m)
    throw ParseError(source, ln,
                     "header announces " + std::to_string(m) + " edges, found " + std::to_string(el.edges.size()));
  return el;
}

EdgeList read_edge_list_file(const std::string& path) {
  auto f = open_in(path);
  return read_edge_list(f, path);
}

void write_edge_list(std::ostream& out, std::size_t n, const std::vector<Edge>& edges, bool multi) {
  out << n << ' ' << edges.size() << (multi ? " multi" : "") << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list_file(const std::string& path, std::size_t n, const std::vector<Edge>& edges, bool multi) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_edge_list(f, n, edges, multi);
}

void write_matching(std::ostream& out, const Matching& m) {
  out << "matching " << m.size() << '\n';
  for (const Edge& e : m) out << e.u << ' ' << e.v << '\n';
}

void write_matching_file(const std::string& path, const Matching& m) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_matching(f, m);
}

Matching read_matching(std::istream& in, const std::string& source) {
  Matching out;
  std::string line;
  std::size_t ln = 0;
  bool header = false;
  std::uint64_t k = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (skip(line)) continue;
    const auto tok = split(line);
    if (!header) {
      if (tok.size() != 2 || tok[0] != "matching") throw ParseError(source, ln, "expected header 'matching k'");
      k = number(tok[1], source, ln);
      header = true;
      continue;
    }
    if (tok.size() != 2) throw ParseError(source, ln, "expected two integers");
    const auto a = number(tok[0], source, ln), b = number(tok[1], source, ln);
    if (a == b) throw ParseError(source, ln, "self-loop");
    out.push_back(make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)));
  }
  if (!header) throw ParseError(source, ln, "missing header 'matching k'");
  if (out.size() != k)
    throw ParseError(source, ln, "header announces " + std::to_string(k) + " edges, found " + std::to_string(out.size()));
  return out;
}

std::vector<Update> read_script(std::istream& in, const std::string& source) {
  std::vector<Update> out;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (skip(line)) continue;
    const auto tok = split(line);
    if (tok[0] == "?") {
      if (tok.size() != 1) throw ParseError(source, ln, "'?' takes no arguments");
      out.push_back({UpdateOp::query, 0, 0});
      continue;
    }
    if (tok[0] != "+" && tok[0] != "-") throw ParseError(source, ln, "expected '+', '-' or '?'");
    if (tok.size() != 3) throw ParseError(source, ln, "expected '" + std::string(tok[0]) + " u v'");
    const auto a = number(tok[1], source, ln), b = number(tok[2], source, ln);
    if (a == b) throw ParseError(source, ln, "self-loop");
    out.push_back({tok[0] == "+" ? UpdateOp::insert : UpdateOp::remove, static_cast<Vertex>(a),
                   static_cast<Vertex>(b)});
  }
  return out;
}

std::vector<Update> read_script_file(const std::string& path) {
  auto f = open_in(path);
  return read_script(f, path);
}

void write_script(std::ostream& out, const std::vector<Update>& script) {
  for (const Update& u : script) {
    if (u.op == UpdateOp::query)
      out << "?\n";
    else
      out << (u.op == UpdateOp::insert ? '+' : '-') << ' ' << u.u << ' ' << u.v << '\n';
  }
}

void write_partition(std::ostream& out, const Partition& p) { out << format_partition(p); }

}  // namespace matchcover

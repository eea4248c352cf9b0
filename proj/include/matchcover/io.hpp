#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchcover/dynamic.hpp"
#include "matchcover/graph.hpp"
#include "matchcover/matching.hpp"
#include "matchcover/regularity.hpp"

namespace matchcover {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Edge-list text: header "n m" or "n m multi", then m lines "u v". Blank
/// lines and lines starting with '#' are skipped. Repeated pairs are only
/// accepted under the multi header.
struct EdgeList {
  std::size_t n = 0;
  bool multi = false;
  std::vector<Edge> edges;  // file order
};

EdgeList read_edge_list(std::istream& in, const std::string& source = "<input>");
EdgeList read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, std::size_t n, const std::vector<Edge>& edges, bool multi = false);
void write_edge_list_file(const std::string& path, std::size_t n, const std::vector<Edge>& edges,
                          bool multi = false);

/// Header "matching k", then k lines "u v".
void write_matching(std::ostream& out, const Matching& m);
void write_matching_file(const std::string& path, const Matching& m);
Matching read_matching(std::istream& in, const std::string& source = "<input>");

/// "+ u v", "- u v" or "?" per line.
std::vector<Update> read_script(std::istream& in, const std::string& source = "<input>");
std::vector<Update> read_script_file(const std::string& path);
void write_script(std::ostream& out, const std::vector<Update>& script);

void write_partition(std::ostream& out, const Partition& p);

}  // namespace matchcover

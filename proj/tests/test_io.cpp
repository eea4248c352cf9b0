#include <sstream>

#include "doctest.h"
#include "matchcover/io.hpp"

using namespace matchcover;

namespace {

EdgeList parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in, "g.txt");
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("edge lists round-trip") {
  const std::vector<Edge> edges{{0, 1}, {2, 5}, {1, 4}};
  std::ostringstream out;
  write_edge_list(out, 6, edges);
  CHECK(out.str() == "6 3\n0 1\n2 5\n1 4\n");
  const EdgeList el = parse(out.str());
  CHECK(el.n == 6);
  CHECK_FALSE(el.multi);
  CHECK(el.edges == edges);
}

TEST_CASE("edge list comments, blanks and endpoint order") {
  const EdgeList el = parse("# a comment\n4 2\n\n3 1\n  0\t2\n");
  CHECK(el.edges == std::vector<Edge>{{1, 3}, {0, 2}});
}

TEST_CASE("multi header admits repeated pairs") {
  const EdgeList el = parse("3 3 multi\n0 1\n1 0\n1 2\n");
  CHECK(el.multi);
  CHECK(el.edges.size() == 3);
  std::ostringstream out;
  write_edge_list(out, 3, el.edges, true);
  CHECK(out.str().rfind("3 3 multi\n", 0) == 0);
}

TEST_CASE("edge list errors carry line numbers") {
  CHECK(error_line("3 2\n0 1\n0 1\n") == 3);   // duplicate in a simple graph
  CHECK(error_line("3 1\n0 3\n") == 2);        // out of range
  CHECK(error_line("3 1\n1 1\n") == 2);        // self-loop
  CHECK(error_line("3 1\n0 x\n") == 2);        // not a number
  CHECK(error_line("3 1\n0 1 2\n") == 2);      // too many fields
  CHECK(error_line("3 2 simple\n") == 1);      // unknown header token
  CHECK(error_line("3 2\n0 1\n") == 2);        // short body
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("3 1\n0 7\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("g.txt:2:", 0) == 0);
  }
}

TEST_CASE("matching files") {
  const Matching m{{0, 1}, {2, 3}};
  std::ostringstream out;
  write_matching(out, m);
  CHECK(out.str() == "matching 2\n0 1\n2 3\n");
  std::istringstream in(out.str());
  CHECK(read_matching(in) == m);
  std::istringstream bad("matching 3\n0 1\n");
  CHECK_THROWS_AS(read_matching(bad), ParseError);
  std::istringstream wrong("4 1\n0 1\n");
  CHECK_THROWS_AS(read_matching(wrong), ParseError);
}

TEST_CASE("update scripts") {
  std::istringstream in("+ 0 1\n# note\n- 1 0\n?\n");
  const auto s = read_script(in);
  REQUIRE(s.size() == 3);
  CHECK(s[0].op == UpdateOp::insert);
  CHECK(s[1].op == UpdateOp::remove);
  CHECK(s[2].op == UpdateOp::query);
  std::ostringstream out;
  write_script(out, s);
  CHECK(out.str() == "+ 0 1\n- 1 0\n?\n");

  std::istringstream bad("+ 0 1\n* 2 3\n");
  try {
    read_script(bad, "s.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream loop("+ 2 2\n");
  CHECK_THROWS_AS(read_script(loop), ParseError);
}

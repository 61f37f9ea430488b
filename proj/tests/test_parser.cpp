#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "locmax/parser.hpp"

using namespace locmax;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed CLI binary with stderr routed away from the capture so
// reports stay parseable.
CliResult run_cli(const std::string& args) {
  std::string command = std::string(LOCMAX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path write_temp(const std::string& stem, const std::string& content) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "locmax_tests";
  std::filesystem::create_directories(dir);
  std::filesystem::path file = dir / stem;
  std::ofstream(file) << content;
  return file;
}

ParseError capture(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "unreachable");
}

}  // namespace

TEST_CASE("parsing a language document") {
  ParsedDocument doc = parse("# binary or\nrelation Or 2 01 10 11\n");
  CHECK(doc.language.size() == 1);
  CHECK(doc.language.at("Or").size() == 3);
  CHECK_FALSE(doc.instance.has_value());
  CHECK_FALSE(doc.graph.has_value());
  CHECK(doc.relation_pos.at("Or").line == 2);
  CHECK(doc.relation_pos.at("Or").column == 10);
}

TEST_CASE("parsing an instance document with comments and blank lines") {
  std::string text =
      "relation R 3 000 001 100 011 111\n"
      "\n"
      "var v1 v2 v3   # first three\n"
      "var v4 v5\n"
      "constraint R v1 v2 v3\n"
      "constraint R v3 v4 v5 # overlap\n";
  ParsedDocument doc = parse(text);
  REQUIRE(doc.instance.has_value());
  CHECK(doc.instance->variable_count() == 5);
  CHECK(doc.instance->constraints().size() == 2);
  CHECK(doc.instance->constraints()[1].scope == std::vector<int>{2, 3, 4});
  CHECK(doc.name_pos.at("v4").line == 4);
  CHECK(doc.constraint_pos.size() == 2);
  CHECK(doc.constraint_pos[0].line == 5);
}

TEST_CASE("parsing a graph document") {
  std::string text =
      "left L1 L2\n"
      "right R1\n"
      "edge L1 R1\n"
      "edge L2 R1\n";
  ParsedDocument doc = parse(text);
  REQUIRE(doc.graph.has_value());
  CHECK(doc.graph->left == std::vector<std::string>{"L1", "L2"});
  CHECK(doc.graph->right == std::vector<std::string>{"R1"});
  CHECK(doc.graph->edges.size() == 2);
  CHECK_FALSE(doc.instance.has_value());
}

TEST_CASE("a document without a trailing newline still parses") {
  ParsedDocument doc = parse("relation U1 1 1");
  CHECK(doc.language.at("U1") == Relation::u1());
}

TEST_CASE("parse errors carry one-based positions") {
  ParseError bad_directive = capture("relations R 2 00\n");
  CHECK(bad_directive.line() == 1);
  CHECK(bad_directive.column() == 1);
  CHECK(std::string(bad_directive.what()).find("(line 1, column 1)") != std::string::npos);

  ParseError bad_tuple = capture("relation R 2 00 xx\n");
  CHECK(bad_tuple.line() == 1);
  CHECK(bad_tuple.column() == 17);

  ParseError bad_width = capture("relation R 2 000\n");
  CHECK(bad_width.column() == 14);

  ParseError dup_tuple = capture("relation R 2 00 00\n");
  CHECK(dup_tuple.column() == 17);

  ParseError bad_arity = capture("relation R 17 00000000000000000\n");
  CHECK(bad_arity.column() == 12);
  ParseError huge_arity = capture("relation R 99999999999999999999 0\n");
  CHECK(huge_arity.column() == 12);

  ParseError empty_rel = capture("relation R 2\n");
  CHECK(empty_rel.line() == 1);

  ParseError unknown_rel = capture("relation R 1 0\nvar a\nconstraint S a\n");
  CHECK(unknown_rel.line() == 3);
  CHECK(unknown_rel.column() == 12);

  ParseError unknown_var = capture("relation R 1 0\nvar a\nconstraint R b\n");
  CHECK(unknown_var.line() == 3);
  CHECK(unknown_var.column() == 14);

  ParseError arity_mismatch = capture("relation R 2 00\nvar a\nconstraint R a\n");
  CHECK(arity_mismatch.line() == 3);

  ParseError dup_var = capture("relation R 1 0\nvar a a\n");
  CHECK(dup_var.line() == 2);
  CHECK(dup_var.column() == 7);

  ParseError dup_rel = capture("relation R 1 0\nrelation R 1 1\n");
  CHECK(dup_rel.line() == 2);
  CHECK(dup_rel.column() == 10);
}

TEST_CASE("stage order is enforced") {
  ParseError late_relation = capture("relation R 1 0\nvar a\nrelation S 1 1\n");
  CHECK(late_relation.line() == 3);
  ParseError late_var = capture("relation R 1 0\nvar a\nconstraint R a\nvar b\n");
  CHECK(late_var.line() == 4);
  ParseError late_vertex = capture("left a\nright b\nedge a b\nleft c\n");
  CHECK(late_vertex.line() == 4);
  ParseError mixed = capture("relation R 1 0\nleft a\n");
  CHECK(mixed.line() == 2);
  ParseError mixed_rev = capture("left a\nvar b\n");
  CHECK(mixed_rev.line() == 2);
}

TEST_CASE("graph edges must join declared vertices on the right sides") {
  ParseError bad_left = capture("left a\nright b\nedge b a\n");
  CHECK(bad_left.line() == 3);
  CHECK(bad_left.column() == 6);
  ParseError dup_vertex = capture("left a\nright a\n");
  CHECK(dup_vertex.line() == 2);
}

TEST_CASE("printers emit canonical form and parsing round-trips") {
  std::string text =
      "# comment up front\n"
      "relation R 3 111 000 001 100 011\n"
      "var v1 v2   v3 v4 v5\n"
      "constraint R v1 v2 v3\n"
      "constraint R v3 v4 v5\n";
  ParsedDocument doc = parse(text);
  REQUIRE(doc.instance.has_value());

  std::string printed = print_instance(*doc.instance);
  // Canonical: sorted tuples, one var per line, no comments.
  CHECK(printed ==
        "relation R 3 000 001 011 100 111\n"
        "var v1\nvar v2\nvar v3\nvar v4\nvar v5\n"
        "constraint R v1 v2 v3\n"
        "constraint R v3 v4 v5\n");

  ParsedDocument again = parse(printed);
  REQUIRE(again.instance.has_value());
  CHECK(again.language == doc.language);
  CHECK(again.instance->constraints().size() == doc.instance->constraints().size());
  CHECK(print_instance(*again.instance) == printed);

  // Graph round-trip.
  std::string graph_text = "left L1 L2\nright R1\nedge L1 R1\n";
  ParsedDocument gdoc = parse(graph_text);
  REQUIRE(gdoc.graph.has_value());
  CHECK(print_graph(*gdoc.graph) == "left L1\nleft L2\nright R1\nedge L1 R1\n");
  ParsedDocument gagain = parse(print_graph(*gdoc.graph));
  CHECK(gagain.graph->edges == gdoc.graph->edges);
}

TEST_CASE("generated reduction names with the reserved infix still parse") {
  std::string text =
      "relation R 2 00 01 10\n"
      "var p x__g0 w__g0\n"
      "constraint R x__g0 p\n";
  ParsedDocument doc = parse(text);
  REQUIRE(doc.instance.has_value());
  CHECK(doc.instance->variable_id("x__g0") == 1);
}

TEST_CASE("cli: classify reports the class and witnesses") {
  auto path = write_temp("classify_or.txt", "relation Or 2 01 10 11\n");
  CliResult r = run_cli("classify --language " + path.string());
  REQUIRE(r.exit_code == 0);
  nlohmann::json report = nlohmann::json::parse(r.out);
  CHECK(report["command"] == "classify");
  CHECK(report["exact"] == "POLYNOMIAL");
  CHECK(report["approx"] == "FP_MONOTONE");

  auto nand = write_temp("classify_nand.txt", "relation Nand 2 00 01 10\n");
  CliResult r2 = run_cli("classify --language " + nand.string());
  REQUIRE(r2.exit_code == 0);
  nlohmann::json report2 = nlohmann::json::parse(r2.out);
  CHECK(report2["exact"] == "SHARP_P_COMPLETE");
  CHECK(report2["approx"] == "SAT_EQUIVALENT");
  CHECK(report2["witnesses"]["non_affine"] == "Nand");
}

TEST_CASE("cli: count with method selection and verification") {
  std::string instance_text =
      "relation Eq 2 00 11\n"
      "var a b c\n"
      "constraint Eq a b\n"
      "constraint Eq b c\n";
  auto path = write_temp("count_eq.txt", instance_text);

  CliResult r = run_cli("count --instance " + path.string() + " --method auto --verify");
  REQUIRE(r.exit_code == 0);
  nlohmann::json report = nlohmann::json::parse(r.out);
  CHECK(report["count"] == "2");
  CHECK(report["method"] == "affine");
  CHECK(report["mode"] == "max");
  CHECK(report["verify"]["agree"] == true);

  CliResult all = run_cli("count --instance " + path.string() + " --mode all --method brute");
  REQUIRE(all.exit_code == 0);
  CHECK(nlohmann::json::parse(all.out)["count"] == "2");

  CliResult brute = run_cli("count --instance " + path.string() + " --method brute");
  REQUIRE(brute.exit_code == 0);
  CHECK(nlohmann::json::parse(brute.out)["count"] == "2");

  // Mismatched method: equality is not essentially monotone.
  CliResult bad = run_cli("count --instance " + path.string() + " --method monotone");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("cli: count reports are byte-stable across runs") {
  auto path = write_temp("count_stable.txt",
                         "relation Imp 2 00 01 11\nvar a b\nconstraint Imp a b\n");
  CliResult first = run_cli("count --instance " + path.string() + " --verify");
  CliResult second = run_cli("count --instance " + path.string() + " --verify");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("cli: gadget and reduce round-trip through files") {
  auto lang = write_temp("gadget_nand.txt", "relation Nand 2 00 01 10\n");
  CliResult g = run_cli("gadget --language " + lang.string() + " --relation Nand");
  REQUIRE(g.exit_code == 0);
  nlohmann::json report = nlohmann::json::parse(g.out);
  CHECK(report["case"] == "2a");
  CHECK(report["lifted"] == false);
  CHECK(report["profile"]["n_max0"] == "1");
  CHECK(report["profile"]["n_max1"] == "1");
  CHECK(report["profile"]["n_bad"] == "0");

  auto host = write_temp("reduce_host.txt",
                         "relation Nand 2 00 01 10\nvar p q\nconstraint Nand p q\n");
  auto out = std::filesystem::temp_directory_path() / "locmax_tests" / "reduced.txt";
  CliResult r = run_cli("reduce --instance " + host.string() + " --relation Nand --out " +
                        out.string());
  REQUIRE(r.exit_code == 0);

  std::ifstream in(out);
  std::string produced((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ParsedDocument doc = parse(produced);
  REQUIRE(doc.instance.has_value());
  CHECK(doc.instance->variable_count() == 6);

  CliResult count = run_cli("count --instance " + out.string() + " --method brute");
  REQUIRE(count.exit_code == 0);
  CHECK(nlohmann::json::parse(count.out)["count"] == "3");
}

TEST_CASE("cli: encode-bis writes a countable instance") {
  auto graph = write_temp("graph.txt", "left u\nright v\nedge u v\n");
  auto out = std::filesystem::temp_directory_path() / "locmax_tests" / "encoded.txt";
  CliResult r = run_cli("encode-bis --graph " + graph.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  nlohmann::json report = nlohmann::json::parse(r.out);
  CHECK(report["edges"] == 1);

  CliResult all = run_cli("count --instance " + out.string() + " --mode all --method brute");
  CHECK(nlohmann::json::parse(all.out)["count"] == "3");
  CliResult max = run_cli("count --instance " + out.string() + " --method brute");
  CHECK(nlohmann::json::parse(max.out)["count"] == "1");
}

TEST_CASE("cli: witness subcommand") {
  auto lang = write_temp("witness.txt", "relation Imp 2 00 01 11\n");
  CliResult r = run_cli("witness --language " + lang.string());
  REQUIRE(r.exit_code == 0);
  nlohmann::json report = nlohmann::json::parse(r.out);
  CHECK(report["witnesses"]["non_affine"] == "Imp");
  CHECK(report["witnesses"]["non_im2"].is_null());
}

TEST_CASE("cli: errors exit nonzero with diagnostics on stderr only") {
  auto bad = write_temp("bad.txt", "relation R 2 00 xx\n");
  CliResult r = run_cli("classify --language " + bad.string());
  CHECK(r.exit_code != 0);
  CHECK(r.out.empty());

  CliResult missing = run_cli("classify --language /nonexistent/path.txt");
  CHECK(missing.exit_code != 0);

  CliResult unknown_flag = run_cli("classify --nope");
  CHECK(unknown_flag.exit_code != 0);
}

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "locmax/commands.hpp"
#include "locmax/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"locmax: classify Boolean constraint languages and count locally maximal "
               "satisfying assignments"};
  app.require_subcommand(1);

  std::string language_path;
  std::string instance_path;
  std::string graph_path;
  std::string relation_name;
  std::string out_path;
  locmax::CountOptions count_options;

  CLI::App* classify = app.add_subcommand("classify", "Classify a constraint language");
  classify->add_option("--language", language_path, "Language file")->required();

  CLI::App* count = app.add_subcommand("count", "Count satisfying assignments of an instance");
  count->add_option("--instance", instance_path, "Instance file")->required();
  count->add_option("--mode", count_options.mode, "all | max (default max)");
  count->add_option("--method", count_options.method,
                    "auto | brute | monotone | affine | im2 (default auto)");
  count->add_flag("--verify", count_options.verify,
                  "Cross-check a tractable method against enumeration");
  count->add_option("--cap", count_options.cap,
                    "Variable cap for enumeration (default 24)");

  CLI::App* gadget = app.add_subcommand("gadget", "Synthesize and verify a maximality gadget");
  gadget->add_option("--language", language_path, "Language file")->required();
  gadget->add_option("--relation", relation_name, "Relation name")->required();

  CLI::App* reduce = app.add_subcommand(
      "reduce", "Attach a gadget copy to every variable of an instance");
  reduce->add_option("--instance", instance_path, "Instance file")->required();
  reduce->add_option("--relation", relation_name, "Relation to build the gadget from")
      ->required();
  reduce->add_option("--out", out_path, "Output instance file")->required();

  CLI::App* encode = app.add_subcommand(
      "encode-bis", "Encode a bipartite graph as an implication instance");
  encode->add_option("--graph", graph_path, "Graph file")->required();
  encode->add_option("--out", out_path, "Output instance file")->required();

  CLI::App* witness = app.add_subcommand("witness", "Report hardness witness relations");
  witness->add_option("--language", language_path, "Language file")->required();

  CLI::App* selftest =
      app.add_subcommand("selftest", "Run the built-in verification suites");

  CLI11_PARSE(app, argc, argv);

  try {
    locmax::Report report;
    if (classify->parsed()) {
      report = locmax::cmd_classify(language_path);
    } else if (count->parsed()) {
      report = locmax::cmd_count(instance_path, count_options);
    } else if (gadget->parsed()) {
      report = locmax::cmd_gadget(language_path, relation_name);
    } else if (reduce->parsed()) {
      report = locmax::cmd_reduce(instance_path, relation_name, out_path);
    } else if (encode->parsed()) {
      report = locmax::cmd_encode_bis(graph_path, out_path);
    } else if (selftest->parsed()) {
      report = locmax::cmd_selftest();
      std::cout << locmax::render_report(report) << std::flush;
      return report["ok"].get<bool>() ? 0 : 1;
    } else {
      report = locmax::cmd_witness(language_path);
    }
    std::cout << locmax::render_report(report) << std::flush;
    return 0;
  } catch (const locmax::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

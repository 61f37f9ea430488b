#pragma once

#include <json.hpp>

#include <string>

namespace locmax {

// One function per CLI subcommand. Each returns the machine-readable report
// that goes to standard output; failures raise locmax::Error. Reports are
// byte-stable across runs on identical inputs: keys are emitted in sorted
// order, counts are decimal strings, and nothing time- or path-dependent is
// recorded beyond the inputs themselves.
using Report = nlohmann::json;

Report cmd_classify(const std::string& language_path);

struct CountOptions {
  std::string mode = "max";      // "all" | "max"
  std::string method = "auto";   // "auto" | "brute" | "monotone" | "affine" | "im2"
  bool verify = false;
  int cap = 24;
};
Report cmd_count(const std::string& instance_path, const CountOptions& options);

Report cmd_gadget(const std::string& language_path, const std::string& relation_name);

Report cmd_reduce(const std::string& instance_path, const std::string& relation_name,
                  const std::string& out_path);

Report cmd_encode_bis(const std::string& graph_path, const std::string& out_path);

Report cmd_witness(const std::string& language_path);

// Built-in verification battery: the exhaustive low-arity gadget sweep and
// randomized counter-versus-enumeration suites. `ok` in the report tells
// whether everything passed; progress lines go to stderr.
Report cmd_selftest();

// dump(2) plus trailing newline.
std::string render_report(const Report& report);

}  // namespace locmax

#include "locmax/commands.hpp"

#include <fstream>
#include <sstream>

#include "locmax/parser.hpp"
#include "locmax/tractable.hpp"

namespace locmax {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadArguments, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadArguments, "cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw Error(Errc::BadArguments, "cannot write '" + path + "'");
}

const Instance& need_instance(const ParsedDocument& doc, const std::string& path) {
  if (!doc.instance) {
    throw Error(Errc::BadArguments, "'" + path + "' declares no instance (no var/constraint lines)");
  }
  return *doc.instance;
}

const BipartiteGraph& need_graph(const ParsedDocument& doc, const std::string& path) {
  if (!doc.graph) {
    throw Error(Errc::BadArguments, "'" + path + "' declares no graph (no left/right/edge lines)");
  }
  return *doc.graph;
}

Report witnesses_json(const Witnesses& w) {
  Report out;
  out["non_essentially_monotone"] =
      w.non_essentially_monotone ? Report(*w.non_essentially_monotone) : Report(nullptr);
  out["non_affine"] = w.non_affine ? Report(*w.non_affine) : Report(nullptr);
  out["non_im2"] = w.non_im2 ? Report(*w.non_im2) : Report(nullptr);
  return out;
}

Report profile_json(const GadgetProfile& p) {
  Report out;
  out["n_max0"] = std::to_string(p.n_max0);
  out["n_max1"] = std::to_string(p.n_max1);
  out["n_bad"] = std::to_string(p.n_bad);
  return out;
}

}  // namespace

Report cmd_classify(const std::string& language_path) {
  ParsedDocument doc = parse(read_file(language_path));
  Classification c = classify_language(doc.language);
  Report report;
  report["command"] = "classify";
  report["input"] = language_path;
  report["exact"] = to_string(c.exact);
  report["approx"] = to_string(c.approx);
  report["witnesses"] = witnesses_json(c.witnesses);
  return report;
}

Report cmd_count(const std::string& instance_path, const CountOptions& options) {
  if (options.mode != "all" && options.mode != "max") {
    throw Error(Errc::BadArguments, "mode must be 'all' or 'max'");
  }
  const bool known_method = options.method == "auto" || options.method == "brute" ||
                            options.method == "monotone" || options.method == "affine" ||
                            options.method == "im2";
  if (!known_method) {
    throw Error(Errc::BadArguments, "method must be auto, brute, monotone, affine or im2");
  }

  ParsedDocument doc = parse(read_file(instance_path));
  const Instance& instance = need_instance(doc, instance_path);

  std::string method = options.method;
  if (options.mode == "all") {
    if (method == "auto") method = "brute";
    if (method != "brute") {
      throw Error(Errc::BadArguments,
                  "mode 'all' counts plain satisfying assignments; only brute force applies");
    }
  } else if (method == "auto") {
    switch (classify_language(instance.language()).approx) {
      case ApproxClass::FpMonotone: method = "monotone"; break;
      case ApproxClass::FpAffine: method = "affine"; break;
      case ApproxClass::BisEquivalent: method = "im2"; break;
      case ApproxClass::SatEquivalent: method = "brute"; break;
    }
  }

  CountReport result;
  if (method == "brute") {
    result = options.mode == "all" ? count_sat(instance, options.cap)
                                   : count_max_sat(instance, options.cap);
  } else if (method == "monotone") {
    result = count_max_monotone(instance);
  } else if (method == "affine") {
    result = count_max_affine(instance);
  } else {
    result = count_max_im2(instance);
  }

  Report report;
  report["command"] = "count";
  report["input"] = instance_path;
  report["mode"] = options.mode;
  report["method_requested"] = options.method;
  report["method"] = result.method;
  report["count"] = result.value.get_str();
  report["notes"] = result.notes;

  if (options.verify && method != "brute") {
    if (instance.variable_count() <= options.cap) {
      CountReport brute = count_max_sat(instance, options.cap);
      bool agree = brute.value == result.value;
      Report verify;
      verify["method"] = "brute";
      verify["count"] = brute.value.get_str();
      verify["agree"] = agree;
      report["verify"] = verify;
      if (!agree) {
        throw Error(Errc::VerificationFailed,
                    "counter returned " + result.value.get_str() +
                        " but enumeration returned " + brute.value.get_str());
      }
    } else {
      Report verify;
      verify["skipped"] = "instance exceeds the enumeration cap of " + std::to_string(options.cap);
      report["verify"] = verify;
    }
  }
  return report;
}

Report cmd_gadget(const std::string& language_path, const std::string& relation_name) {
  ParsedDocument doc = parse(read_file(language_path));
  const Relation& rel = doc.language.at(relation_name);
  GadgetResult gadget = synthesize_gadget(rel, relation_name);

  Report report;
  report["command"] = "gadget";
  report["input"] = language_path;
  report["relation"] = relation_name;
  report["case"] = to_string(gadget.case_tag);
  report["lifted"] = gadget.lifted;
  report["distinguished"] =
      gadget.instance.variables()[static_cast<std::size_t>(gadget.distinguished)].name;
  report["profile"] = profile_json(gadget.profile);
  report["instance"] = print_instance(gadget.instance);
  report["notes"] = gadget.transcript;
  return report;
}

Report cmd_reduce(const std::string& instance_path, const std::string& relation_name,
                  const std::string& out_path) {
  ParsedDocument doc = parse(read_file(instance_path));
  const Instance& host = need_instance(doc, instance_path);
  const Relation& rel = doc.language.at(relation_name);

  GadgetResult gadget = synthesize_gadget(rel, relation_name);
  Instance result = attach_gadgets(host, gadget);
  write_file(out_path, print_instance(result));

  Report report;
  report["command"] = "reduce";
  report["input"] = instance_path;
  report["out"] = out_path;
  report["relation"] = relation_name;
  report["case"] = to_string(gadget.case_tag);
  report["lifted"] = gadget.lifted;
  report["host_variables"] = host.variable_count();
  report["gadget_variables"] = gadget.instance.variable_count();
  report["result_variables"] = result.variable_count();
  report["result_constraints"] = static_cast<int>(result.constraints().size());
  report["notes"] = gadget.transcript;
  return report;
}

Report cmd_encode_bis(const std::string& graph_path, const std::string& out_path) {
  ParsedDocument doc = parse(read_file(graph_path));
  const BipartiteGraph& graph = need_graph(doc, graph_path);
  Instance instance = bis_encode(graph);
  write_file(out_path, print_instance(instance));

  Report report;
  report["command"] = "encode-bis";
  report["input"] = graph_path;
  report["out"] = out_path;
  report["left_vertices"] = static_cast<int>(graph.left.size());
  report["right_vertices"] = static_cast<int>(graph.right.size());
  report["edges"] = static_cast<int>(graph.edges.size());
  report["variables"] = instance.variable_count();
  report["constraints"] = static_cast<int>(instance.constraints().size());
  return report;
}

Report cmd_witness(const std::string& language_path) {
  ParsedDocument doc = parse(read_file(language_path));
  Witnesses w = find_witnesses(doc.language);
  Report report;
  report["command"] = "witness";
  report["input"] = language_path;
  report["witnesses"] = witnesses_json(w);
  return report;
}

std::string render_report(const Report& report) { return report.dump(2) + "\n"; }

}  // namespace locmax

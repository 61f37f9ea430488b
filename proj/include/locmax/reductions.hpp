#pragma once

#include <string>
#include <vector>

#include "locmax/oracle.hpp"

namespace locmax {

// Which branch of the synthesis case analysis produced a gadget. The split is
// driven by 0/1-validity of the relation's nonzero projection, with sub-cases
// on membership of specific derived tuples.
enum class GadgetCase { Case1, Case2a, Case2b, Case3, Case4a, Case4b };

const char* to_string(GadgetCase c);

// A verified maximality gadget: an instance over a single relation with a
// distinguished variable r whose profile is exactly (n_max0, n_max1, n_bad) =
// (1, 1, 0) — one locally maximal assignment with r = 0, one with r = 1, and
// no satisfying assignment maximal everywhere else but not for r. Instances of
// this shape are only ever constructed after the oracle confirms the profile.
struct GadgetResult {
  Instance instance;
  int distinguished;  // variable id of r (always 0)
  GadgetCase case_tag;
  bool lifted;  // whether an always-zero lift variable was appended
  GadgetProfile profile;
  std::vector<std::string> transcript;
};

// Builds and verifies a maximality gadget for a relation that is not
// essentially monotone (errors EssentiallyMonotone otherwise; a failed
// post-verification raises VerificationFailed and indicates a bug). The
// relation is registered in the gadget's language under `name`.
GadgetResult synthesize_gadget(const Relation& r, const std::string& name = "R");

// Attaches a fresh copy of the gadget to every variable of j, identifying the
// copy's distinguished variable with that variable; copy-internal variables
// are renamed NAME__g<i> where i is the host variable's id. Afterwards the
// satisfying assignments of j correspond one-to-one to the locally maximal
// satisfying assignments of the result. Requires j's language to be exactly
// the gadget's relation (RelationMismatch) and j's variable names to avoid the
// reserved __g infix (ReservedName).
Instance attach_gadgets(const Instance& j, const GadgetResult& gadget);

struct BipartiteGraph {
  std::vector<std::string> left;
  std::vector<std::string> right;
  std::vector<std::pair<std::string, std::string>> edges;  // (left, right)
};

// Encodes a bipartite graph as an instance over {Implies}: one variable per
// vertex (left vertices first), one Implies(u, v) per edge. Satisfying
// assignments correspond to independent sets (u = 1 reads "u in the set",
// v = 1 reads "v out of the set").
Instance bis_encode(const BipartiteGraph& graph);

enum class HardnessTarget { Bis, Sat };

// Product of the language's hardness witnesses: non-affine x
// non-essentially-monotone for the Bis target, with the non-pin/implication
// witness appended for Sat. Errors WitnessMissing naming the absent property.
Relation hardness_witness_product(const ConstraintLanguage& language, HardnessTarget target);

}  // namespace locmax

#include "locmax/reductions.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace locmax {

namespace {

// Case-local symbolic variables. Every case uses r (the distinguished
// variable) and x; y and w appear in some of them.
enum class Tag { R, X, Y, W };

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::R: return "r";
    case Tag::X: return "x";
    case Tag::Y: return "y";
    case Tag::W: return "w";
  }
  return "?";
}

struct CaseGadget {
  GadgetCase tag;
  std::vector<Tag> variables;                 // r first
  std::vector<std::vector<Tag>> constraints;  // scopes over the projected relation
  std::vector<std::string> transcript;
};

std::string tuple_str(TupleWord w, int k) { return BitTuple(k, w).to_string(); }

// The case analysis runs on rs = the relation's nonzero projection, which is
// not monotone and has no always-zero positions.
CaseGadget build_case_gadget(const Relation& rs) {
  const int k = rs.arity();
  const TupleWord full = static_cast<TupleWord>((1u << k) - 1);
  auto bit = [k](TupleWord w, int pos) { return (w >> (k - pos)) & 1u; };  // 1-based

  const bool zero_valid = is_zero_valid(rs);
  const bool one_valid = is_one_valid(rs);
  CaseGadget g;

  // Shared by cases 2 and 4b: s = lexicographically least tuple with the
  // maximum number of ones, i = least position where s is 0 and some member
  // has 1, sp = the least such member. Such a position always exists: s is not
  // all-ones (the relation is not 1-valid here) and no position is always 0.
  auto pick_s_i_sp = [&](TupleWord& s, int& i, TupleWord& sp) {
    int max_ones = -1;
    for (TupleWord w : rs.words()) {
      int ones = std::popcount(w);
      if (ones > max_ones) {
        max_ones = ones;
        s = w;
      }
    }
    i = 0;
    sp = 0;
    for (int p = 1; p <= k && i == 0; ++p) {
      if (bit(s, p) != 0) continue;
      for (TupleWord w : rs.words()) {
        if (bit(w, p)) {
          i = p;
          sp = w;
          break;
        }
      }
    }
    if (i == 0 || rs.contains(static_cast<TupleWord>(s | sp))) {
      // s | sp has more ones than the maximum, so membership is impossible.
      throw Error(Errc::VerificationFailed, "case selection invariant violated");
    }
  };

  if (zero_valid && one_valid) {
    // Case 1: pin a non-member pattern between r and x in both polarities.
    TupleWord s = 0;
    while (s <= full && rs.contains(s)) ++s;
    if (s > full) throw Error(Errc::VerificationFailed, "non-monotone relation is complete");
    std::vector<Tag> a, b;
    for (int p = 1; p <= k; ++p) {
      a.push_back(bit(s, p) ? Tag::X : Tag::R);
      b.push_back(bit(s, p) ? Tag::R : Tag::X);
    }
    g.tag = GadgetCase::Case1;
    g.variables = {Tag::R, Tag::X};
    g.constraints = {a, b};
    g.transcript.push_back("case 1: s = " + tuple_str(s, k));
  } else if (zero_valid && !one_valid) {
    TupleWord s = 0, sp = 0;
    int i = 0;
    pick_s_i_sp(s, i, sp);
    TupleWord t = static_cast<TupleWord>(s & ~sp & full);
    std::vector<Tag> wrow(static_cast<std::size_t>(k), Tag::W);
    if (rs.contains(t)) {
      std::vector<Tag> a;
      for (int p = 1; p <= k; ++p) {
        if (bit(sp, p)) {
          a.push_back(Tag::X);
        } else {
          a.push_back(bit(s, p) ? Tag::R : Tag::W);
        }
      }
      g.tag = GadgetCase::Case2a;
      g.variables = {Tag::R, Tag::X, Tag::W};
      g.constraints = {wrow, a};
      g.transcript.push_back("case 2a: s = " + tuple_str(s, k) + ", s' = " + tuple_str(sp, k) +
                             ", t = " + tuple_str(t, k) + " (member)");
    } else {
      std::vector<Tag> a, b;
      for (int p = 1; p <= k; ++p) {
        if (bit(s, p) == 0) {
          a.push_back(Tag::W);
          b.push_back(Tag::W);
        } else if (bit(sp, p) == 0) {
          a.push_back(Tag::X);
          b.push_back(Tag::R);
        } else {
          a.push_back(Tag::R);
          b.push_back(Tag::X);
        }
      }
      g.tag = GadgetCase::Case2b;
      g.variables = {Tag::R, Tag::X, Tag::W};
      g.constraints = {wrow, a, b};
      g.transcript.push_back("case 2b: s = " + tuple_str(s, k) + ", s' = " + tuple_str(sp, k) +
                             ", t = " + tuple_str(t, k) + " (non-member)");
    }
  } else if (!zero_valid && one_valid) {
    // Case 3: first (tuple, position) pair in lexicographic order witnessing
    // non-monotonicity.
    TupleWord s = 0, sp = 0;
    int i = 0;
    for (TupleWord w : rs.words()) {
      for (int p = 1; p <= k && i == 0; ++p) {
        TupleWord raised = static_cast<TupleWord>(w | (1u << (k - p)));
        if (bit(w, p) == 0 && !rs.contains(raised)) {
          s = w;
          i = p;
          sp = raised;
        }
      }
      if (i != 0) break;
    }
    if (i == 0) throw Error(Errc::VerificationFailed, "no monotonicity violation found");
    std::vector<Tag> yrow(static_cast<std::size_t>(k), Tag::Y);
    std::vector<Tag> a, b;
    for (int p = 1; p <= k; ++p) {
      if (p == i) {
        a.push_back(Tag::X);
        b.push_back(Tag::R);
      } else if (bit(sp, p) == 0) {
        a.push_back(Tag::R);
        b.push_back(Tag::X);
      } else {
        a.push_back(Tag::Y);
        b.push_back(Tag::Y);
      }
    }
    g.tag = GadgetCase::Case3;
    g.variables = {Tag::R, Tag::X, Tag::Y};
    g.constraints = {yrow, a, b};
    g.transcript.push_back("case 3: s = " + tuple_str(s, k) + ", i = " + std::to_string(i));
  } else {
    // Case 4: neither all-zero nor all-one is a member.
    TupleWord s_compl = full + 1;
    for (TupleWord w : rs.words()) {
      if (rs.contains(static_cast<TupleWord>(~w & full))) {
        s_compl = w;
        break;
      }
    }
    if (s_compl <= full) {
      std::vector<Tag> a;
      for (int p = 1; p <= k; ++p) a.push_back(bit(s_compl, p) ? Tag::X : Tag::R);
      g.tag = GadgetCase::Case4a;
      g.variables = {Tag::R, Tag::X};
      g.constraints = {a};
      g.transcript.push_back("case 4a: s = " + tuple_str(s_compl, k) + " with complement member");
    } else {
      TupleWord s = 0, sp = 0;
      int i = 0;
      pick_s_i_sp(s, i, sp);
      std::vector<Tag> a, b;
      for (int p = 1; p <= k; ++p) {
        if (bit(s, p) == 0 && bit(sp, p) == 0) {
          a.push_back(Tag::W);
          b.push_back(Tag::W);
        } else if (bit(s, p) == 0 && bit(sp, p) != 0) {
          a.push_back(Tag::W);
          b.push_back(Tag::X);
        } else if (bit(s, p) != 0 && bit(sp, p) == 0) {
          a.push_back(Tag::Y);
          b.push_back(Tag::R);
        } else {
          a.push_back(Tag::Y);
          b.push_back(Tag::Y);
        }
      }
      g.tag = GadgetCase::Case4b;
      g.variables = {Tag::R, Tag::X, Tag::Y, Tag::W};
      g.constraints = {a, b};
      g.transcript.push_back("case 4b: s = " + tuple_str(s, k) + ", s' = " + tuple_str(sp, k));
    }
  }
  return g;
}

}  // namespace

const char* to_string(GadgetCase c) {
  switch (c) {
    case GadgetCase::Case1: return "1";
    case GadgetCase::Case2a: return "2a";
    case GadgetCase::Case2b: return "2b";
    case GadgetCase::Case3: return "3";
    case GadgetCase::Case4a: return "4a";
    case GadgetCase::Case4b: return "4b";
  }
  return "?";
}

GadgetResult synthesize_gadget(const Relation& r, const std::string& name) {
  if (is_essentially_monotone(r)) {
    throw Error(Errc::EssentiallyMonotone,
                "no maximality gadget exists for an essentially monotone relation");
  }
  Projection proj = project_nonzero(r);  // cannot fail: {all-zero} is essentially monotone
  const bool lifted = proj.relation.arity() != r.arity();

  CaseGadget cg = build_case_gadget(proj.relation);
  if (lifted) {
    cg.transcript.insert(cg.transcript.begin(),
                         "projection drops " +
                             std::to_string(r.arity() - proj.relation.arity()) +
                             " always-zero positions");
  }

  // Assemble the instance over the original relation. The lift variable fills
  // every always-zero position and is forced to 0 by any constraint.
  std::vector<std::string> var_names;
  std::map<Tag, int> tag_id;
  for (Tag t : cg.variables) {
    tag_id[t] = static_cast<int>(var_names.size());
    var_names.push_back(tag_name(t));
  }
  int lift_id = -1;
  if (lifted) {
    lift_id = static_cast<int>(var_names.size());
    bool w_taken = tag_id.count(Tag::W) != 0;
    var_names.push_back(w_taken ? "w1" : "w");
    cg.transcript.push_back(std::string("lift variable ") + (w_taken ? "w1" : "w") +
                            " appended at the dropped positions");
  }

  // position_map[q-1] = original position of projected position q.
  std::vector<int> source_of(static_cast<std::size_t>(r.arity()), -1);
  for (std::size_t q = 0; q < proj.position_map.size(); ++q) {
    source_of[static_cast<std::size_t>(proj.position_map[q] - 1)] = static_cast<int>(q);
  }

  std::vector<Constraint> constraints;
  for (const std::vector<Tag>& scope_tags : cg.constraints) {
    Constraint c;
    c.relation = name;
    for (int p = 0; p < r.arity(); ++p) {
      int q = source_of[static_cast<std::size_t>(p)];
      c.scope.push_back(q >= 0 ? tag_id.at(scope_tags[static_cast<std::size_t>(q)]) : lift_id);
    }
    constraints.push_back(std::move(c));
  }

  ConstraintLanguage language;
  language.add(name, r);
  Instance instance(std::move(language), std::move(var_names), std::move(constraints));

  GadgetProfile profile = gadget_profile(instance, 0);
  if (!(profile == GadgetProfile{1, 1, 0})) {
    throw Error(Errc::VerificationFailed,
                "gadget profile is (" + std::to_string(profile.n_max0) + ", " +
                    std::to_string(profile.n_max1) + ", " + std::to_string(profile.n_bad) +
                    "), expected (1, 1, 0)");
  }
  cg.transcript.push_back("verified profile (1, 1, 0)");

  return GadgetResult{std::move(instance), 0, cg.tag, lifted, profile, std::move(cg.transcript)};
}

Instance attach_gadgets(const Instance& j, const GadgetResult& gadget) {
  if (j.language().size() != 1) {
    throw Error(Errc::RelationMismatch, "gadget attachment expects a single-relation instance");
  }
  const auto& [host_name, host_rel] = j.language().entry(0);
  if (!(host_rel == gadget.instance.language().entry(0).second)) {
    throw Error(Errc::RelationMismatch,
                "instance relation '" + host_name + "' differs from the gadget's relation");
  }
  for (const Variable& v : j.variables()) {
    if (v.name.find("__g") != std::string::npos) {
      throw Error(Errc::ReservedName,
                  "variable '" + v.name + "' uses the reserved __g infix");
    }
  }

  std::vector<std::string> names;
  for (const Variable& v : j.variables()) names.push_back(v.name);
  std::vector<Constraint> constraints = j.constraints();

  const Instance& gi = gadget.instance;
  for (const Variable& host : j.variables()) {
    std::vector<int> id_map(static_cast<std::size_t>(gi.variable_count()), -1);
    for (const Variable& gv : gi.variables()) {
      if (gv.id == gadget.distinguished) {
        id_map[static_cast<std::size_t>(gv.id)] = host.id;
      } else {
        id_map[static_cast<std::size_t>(gv.id)] = static_cast<int>(names.size());
        names.push_back(gv.name + "__g" + std::to_string(host.id));
      }
    }
    for (const Constraint& gc : gi.constraints()) {
      Constraint c;
      c.relation = host_name;
      for (int v : gc.scope) c.scope.push_back(id_map[static_cast<std::size_t>(v)]);
      constraints.push_back(std::move(c));
    }
  }
  return Instance(j.language(), std::move(names), std::move(constraints));
}

Instance bis_encode(const BipartiteGraph& graph) {
  ConstraintLanguage language;
  language.add("Implies", Relation::implies());

  std::vector<std::string> names;
  std::map<std::string, int> left_id, right_id;
  for (const std::string& u : graph.left) {
    left_id[u] = static_cast<int>(names.size());
    names.push_back(u);
  }
  for (const std::string& v : graph.right) {
    right_id[v] = static_cast<int>(names.size());
    names.push_back(v);
  }

  std::vector<Constraint> constraints;
  for (const auto& [u, v] : graph.edges) {
    auto ui = left_id.find(u);
    auto vi = right_id.find(v);
    if (ui == left_id.end()) {
      throw Error(Errc::UnknownVariable, "edge endpoint '" + u + "' is not a left vertex");
    }
    if (vi == right_id.end()) {
      throw Error(Errc::UnknownVariable, "edge endpoint '" + v + "' is not a right vertex");
    }
    constraints.push_back(Constraint{"Implies", {ui->second, vi->second}});
  }
  return Instance(std::move(language), std::move(names), std::move(constraints));
}

Relation hardness_witness_product(const ConstraintLanguage& language, HardnessTarget target) {
  Witnesses w = find_witnesses(language);
  if (!w.non_affine) {
    throw Error(Errc::WitnessMissing, "every relation is affine; no non-affine witness");
  }
  if (!w.non_essentially_monotone) {
    throw Error(Errc::WitnessMissing,
                "every relation is essentially monotone; no non-essentially-monotone witness");
  }
  Relation result = product(language.at(*w.non_affine), language.at(*w.non_essentially_monotone));
  if (target == HardnessTarget::Sat) {
    if (!w.non_im2) {
      throw Error(Errc::WitnessMissing,
                  "every relation is a pin/implication relation; no witness outside the class");
    }
    result = product(result, language.at(*w.non_im2));
  }

  // The factors force these properties onto the product; a failure here is a bug.
  if (is_affine(result) || is_essentially_monotone(result) ||
      (target == HardnessTarget::Sat && is_im2(result))) {
    throw Error(Errc::VerificationFailed, "witness product lost a hardness property");
  }
  return result;
}

}  // namespace locmax

#include <bit>
#include <functional>
#include <iostream>
#include <random>

#include "locmax/commands.hpp"
#include "locmax/reductions.hpp"
#include "locmax/tractable.hpp"

namespace locmax {

namespace {

using Rng = std::mt19937_64;

// Uniform pick in [0, n); plain modulo keeps the streams identical across
// standard libraries, and the bias is irrelevant here.
std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }

// --- independent characterizations used as cross-checks ----------------------

bool xor_closed(const Relation& r) {
  for (TupleWord a : r.words()) {
    for (TupleWord b : r.words()) {
      for (TupleWord c : r.words()) {
        if (!r.contains(static_cast<TupleWord>(a ^ b ^ c))) return false;
      }
    }
  }
  return true;
}

bool andor_closed(const Relation& r) {
  for (TupleWord a : r.words()) {
    for (TupleWord b : r.words()) {
      if (!r.contains(static_cast<TupleWord>(a & b))) return false;
      if (!r.contains(static_cast<TupleWord>(a | b))) return false;
    }
  }
  return true;
}

// --- random relation generators ----------------------------------------------

Relation random_monotone_relation(Rng& rng, int arity) {
  const TupleWord full = static_cast<TupleWord>((1u << arity) - 1);
  std::vector<bool> member(static_cast<std::size_t>(full) + 1, false);
  member[static_cast<std::size_t>(pick(rng, full + 1))] = true;
  for (TupleWord w = 0; w <= full; ++w) {
    if (pick(rng, 4) == 0) member[w] = true;
  }
  // Upward closure makes the set monotone; the ascending sweep is enough
  // because raises only go to larger words.
  for (TupleWord w = 0; w <= full; ++w) {
    if (!member[w]) continue;
    for (int b = 0; b < arity; ++b) member[w | (1u << b)] = true;
  }
  std::vector<TupleWord> words;
  for (TupleWord w = 0; w <= full; ++w) {
    if (member[w]) words.push_back(w);
  }
  return Relation::from_words(arity, std::move(words));
}

// Essentially monotone: a monotone core with optional always-zero positions
// spliced in; occasionally the degenerate all-zero singleton.
Relation random_essentially_monotone_relation(Rng& rng, int arity) {
  if (pick(rng, 12) == 0) return Relation::from_words(arity, {0});
  int zeros = static_cast<int>(pick(rng, static_cast<std::uint64_t>(arity)));  // < arity
  Relation core = random_monotone_relation(rng, arity - zeros);
  if (zeros == 0) return core;
  std::vector<int> positions(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) positions[static_cast<std::size_t>(i)] = i;
  for (int i = arity - 1; i > 0; --i) {
    std::swap(positions[static_cast<std::size_t>(i)],
              positions[static_cast<std::size_t>(pick(rng, static_cast<std::uint64_t>(i + 1)))]);
  }
  std::vector<bool> is_zero_col(static_cast<std::size_t>(arity), false);
  for (int i = 0; i < zeros; ++i) is_zero_col[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] = true;

  std::vector<TupleWord> words;
  for (TupleWord w : core.words()) {
    TupleWord out = 0;
    int src = 0;
    for (int p = 0; p < arity; ++p) {
      out <<= 1;
      if (!is_zero_col[static_cast<std::size_t>(p)]) {
        out |= (w >> (core.arity() - 1 - src)) & 1u;
        ++src;
      }
    }
    words.push_back(out);
  }
  return Relation::from_words(arity, std::move(words));
}

Relation random_affine_relation(Rng& rng, int arity) {
  const TupleWord full = static_cast<TupleWord>((1u << arity) - 1);
  while (true) {
    int eqs = static_cast<int>(pick(rng, static_cast<std::uint64_t>(arity) + 1));
    std::vector<std::pair<TupleWord, int>> system;
    for (int e = 0; e < eqs; ++e) {
      TupleWord support = static_cast<TupleWord>(pick(rng, full + 1));
      if (support == 0) continue;
      system.emplace_back(support, static_cast<int>(pick(rng, 2)));
    }
    std::vector<TupleWord> words;
    for (TupleWord w = 0; w <= full; ++w) {
      bool ok = true;
      for (const auto& [support, rhs] : system) {
        if ((std::popcount(w & support) & 1) != rhs) {
          ok = false;
          break;
        }
      }
      if (ok) words.push_back(w);
    }
    if (!words.empty()) return Relation::from_words(arity, std::move(words));
  }
}

Relation random_im2_relation(Rng& rng, int arity) {
  const TupleWord full = static_cast<TupleWord>((1u << arity) - 1);
  while (true) {
    TupleWord pin0 = 0, pin1 = 0;
    for (int b = 0; b < arity; ++b) {
      std::uint64_t roll = pick(rng, 8);
      if (roll == 0) pin0 |= 1u << b;
      if (roll == 1) pin1 |= 1u << b;
    }
    std::vector<std::pair<int, int>> implications;
    for (int i = 0; i < arity; ++i) {
      for (int j = 0; j < arity; ++j) {
        if (i != j && pick(rng, 5) == 0) implications.emplace_back(i, j);
      }
    }
    std::vector<TupleWord> words;
    for (TupleWord w = 0; w <= full; ++w) {
      bool ok = (w & pin0) == 0 && (w & pin1) == pin1;
      for (auto [i, j] : implications) {
        if (!ok) break;
        if (((w >> i) & 1u) && !((w >> j) & 1u)) ok = false;
      }
      if (ok) words.push_back(w);
    }
    if (!words.empty()) return Relation::from_words(arity, std::move(words));
  }
}

Instance random_instance(Rng& rng, const ConstraintLanguage& language, int max_vars) {
  int n = 3 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(max_vars - 2)));
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  int c = static_cast<int>(pick(rng, static_cast<std::uint64_t>(2 * n)));
  std::vector<Constraint> constraints;
  for (int i = 0; i < c; ++i) {
    const auto& [name, rel] = language.entry(pick(rng, language.size()));
    Constraint constraint;
    constraint.relation = name;
    for (int p = 0; p < rel.arity(); ++p) {
      constraint.scope.push_back(static_cast<int>(pick(rng, static_cast<std::uint64_t>(n))));
    }
    constraints.push_back(std::move(constraint));
  }
  return Instance(language, std::move(names), std::move(constraints));
}

ConstraintLanguage random_language(Rng& rng, int relations, int max_arity,
                                   Relation (*gen)(Rng&, int)) {
  ConstraintLanguage language;
  for (int i = 0; i < relations; ++i) {
    int arity = 1 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(max_arity)));
    language.add("R" + std::to_string(i), gen(rng, arity));
  }
  return language;
}

// --- suites -------------------------------------------------------------------

struct Suite {
  std::string name;
  int cases = 0;
  int failures = 0;
};

void for_all_relations_up_to_arity3(const std::function<void(const Relation&)>& body) {
  for (int arity = 1; arity <= 3; ++arity) {
    const TupleWord full = static_cast<TupleWord>((1u << arity) - 1);
    for (std::uint32_t mask = 1; mask < (1u << (full + 1)); ++mask) {
      std::vector<TupleWord> words;
      for (TupleWord w = 0; w <= full; ++w) {
        if ((mask >> w) & 1u) words.push_back(w);
      }
      body(Relation::from_words(arity, std::move(words)));
    }
  }
}

Suite gadget_sweep() {
  Suite suite{"gadget-sweep-arity-1-to-3"};
  for_all_relations_up_to_arity3([&suite](const Relation& r) {
    if (is_essentially_monotone(r)) return;
    ++suite.cases;
    try {
      GadgetResult g = synthesize_gadget(r);
      if (!(g.profile == GadgetProfile{1, 1, 0})) ++suite.failures;
    } catch (const Error&) {
      ++suite.failures;
    }
  });
  return suite;
}

Suite counter_suite(const std::string& name, Relation (*gen)(Rng&, int),
                    CountReport (*counter)(const Instance&), std::uint64_t seed) {
  Suite suite{name};
  Rng rng(seed);
  for (int trial = 0; trial < 120; ++trial) {
    ConstraintLanguage language =
        random_language(rng, 1 + static_cast<int>(pick(rng, 3)), 4, gen);
    Instance instance = random_instance(rng, language, 10);
    ++suite.cases;
    try {
      if (counter(instance).value != count_max_sat(instance).value) ++suite.failures;
    } catch (const Error&) {
      ++suite.failures;
    }
  }
  return suite;
}

Suite affine_agreement() {
  Suite suite{"affine-closure-agreement"};
  for_all_relations_up_to_arity3([&suite](const Relation& r) {
    ++suite.cases;
    if (is_affine(r) != xor_closed(r)) ++suite.failures;
  });
  return suite;
}

Suite im2_agreement() {
  Suite suite{"im2-closure-agreement"};
  for_all_relations_up_to_arity3([&suite](const Relation& r) {
    ++suite.cases;
    if (is_im2(r) != andor_closed(r)) ++suite.failures;
  });
  return suite;
}

CountReport run_monotone(const Instance& i) { return count_max_monotone(i); }
CountReport run_affine(const Instance& i) { return count_max_affine(i); }
CountReport run_im2(const Instance& i) { return count_max_im2(i, kDefaultComponentCap); }

}  // namespace

Report cmd_selftest() {
  std::vector<Suite> suites;
  suites.push_back(gadget_sweep());
  suites.push_back(counter_suite("monotone-counter-vs-enumeration",
                                 random_essentially_monotone_relation, run_monotone, 1001));
  suites.push_back(
      counter_suite("affine-counter-vs-enumeration", random_affine_relation, run_affine, 1002));
  suites.push_back(
      counter_suite("im2-pipeline-vs-enumeration", random_im2_relation, run_im2, 1003));
  suites.push_back(affine_agreement());
  suites.push_back(im2_agreement());

  bool ok = true;
  Report list = Report::array();
  for (const Suite& s : suites) {
    std::cerr << (s.failures == 0 ? "ok   " : "FAIL ") << s.name << " (" << s.cases
              << " cases, " << s.failures << " failures)\n";
    Report entry;
    entry["name"] = s.name;
    entry["cases"] = s.cases;
    entry["failures"] = s.failures;
    list.push_back(entry);
    if (s.failures != 0) ok = false;
  }
  Report report;
  report["command"] = "selftest";
  report["suites"] = list;
  report["ok"] = ok;
  return report;
}

}  // namespace locmax

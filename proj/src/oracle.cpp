#include "locmax/oracle.hpp"

#include <map>
#include <memory>

namespace locmax {

namespace {

// Bit-packed evaluator: assignments are words with variable id i at bit i,
// relations become lookup tables indexed by the gathered scope word.
struct CompiledConstraint {
  std::vector<int> scope;
  const std::vector<std::uint8_t>* table;
};

struct Compiled {
  int n = 0;
  std::vector<CompiledConstraint> constraints;
  std::vector<std::vector<int>> touching;  // variable id -> constraint indices
  std::vector<std::unique_ptr<std::vector<std::uint8_t>>> tables;

  explicit Compiled(const Instance& instance) : n(instance.variable_count()) {
    std::map<std::string, const std::vector<std::uint8_t>*> by_name;
    touching.resize(static_cast<std::size_t>(n));
    for (const Constraint& c : instance.constraints()) {
      auto it = by_name.find(c.relation);
      if (it == by_name.end()) {
        const Relation& rel = instance.language().at(c.relation);
        auto table = std::make_unique<std::vector<std::uint8_t>>(
            std::size_t{1} << rel.arity(), std::uint8_t{0});
        for (TupleWord w : rel.words()) (*table)[w] = 1;
        it = by_name.emplace(c.relation, table.get()).first;
        tables.push_back(std::move(table));
      }
      std::size_t ci = constraints.size();
      constraints.push_back(CompiledConstraint{c.scope, it->second});
      for (int v : c.scope) {
        std::vector<int>& t = touching[static_cast<std::size_t>(v)];
        if (t.empty() || t.back() != static_cast<int>(ci)) t.push_back(static_cast<int>(ci));
      }
    }
  }

  bool constraint_ok(std::size_t ci, std::uint64_t a) const {
    const CompiledConstraint& c = constraints[ci];
    std::uint32_t idx = 0;
    for (int v : c.scope) idx = (idx << 1) | static_cast<std::uint32_t>((a >> v) & 1u);
    return (*c.table)[idx] != 0;
  }

  bool satisfied(std::uint64_t a) const {
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      if (!constraint_ok(ci, a)) return false;
    }
    return true;
  }

  // Whether raising variable v of the satisfying assignment a keeps it
  // satisfying; only constraints touching v can change.
  bool raise_keeps_satisfying(std::uint64_t a, int v) const {
    std::uint64_t b = a | (std::uint64_t{1} << v);
    for (int ci : touching[static_cast<std::size_t>(v)]) {
      if (!constraint_ok(static_cast<std::size_t>(ci), b)) return false;
    }
    return true;
  }
};

void check_cap(const Instance& instance, int cap) {
  if (instance.variable_count() > cap) {
    throw Error(Errc::TooLarge, "exhaustive enumeration over " +
                                    std::to_string(instance.variable_count()) +
                                    " variables exceeds the cap of " + std::to_string(cap));
  }
}

std::string enumeration_note(int n) {
  return "enumerated 2^" + std::to_string(n) + " assignments";
}

}  // namespace

CountReport count_sat(const Instance& instance, int cap) {
  check_cap(instance, cap);
  Compiled c(instance);
  const std::uint64_t limit = std::uint64_t{1} << c.n;
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < limit; ++a) {
    if (c.satisfied(a)) ++count;
  }
  CountReport report;
  report.value = mpz_class(static_cast<unsigned long>(count & 0xffffffffu));
  report.value += mpz_class(static_cast<unsigned long>(count >> 32)) << 32;
  report.method = "brute";
  report.notes.push_back(enumeration_note(c.n));
  return report;
}

CountReport count_max_sat(const Instance& instance, int cap) {
  check_cap(instance, cap);
  Compiled c(instance);
  const std::uint64_t limit = std::uint64_t{1} << c.n;
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < limit; ++a) {
    if (!c.satisfied(a)) continue;
    bool maximal = true;
    for (int v = 0; v < c.n && maximal; ++v) {
      if (((a >> v) & 1u) == 0 && c.raise_keeps_satisfying(a, v)) maximal = false;
    }
    if (maximal) ++count;
  }
  CountReport report;
  report.value = mpz_class(static_cast<unsigned long>(count & 0xffffffffu));
  report.value += mpz_class(static_cast<unsigned long>(count >> 32)) << 32;
  report.method = "brute";
  report.notes.push_back(enumeration_note(c.n));
  return report;
}

GadgetProfile gadget_profile(const Instance& instance, int distinguished, int cap) {
  check_cap(instance, cap);
  if (distinguished < 0 || distinguished >= instance.variable_count()) {
    throw Error(Errc::UnknownVariable,
                "distinguished variable id " + std::to_string(distinguished) + " out of range");
  }
  Compiled c(instance);
  const std::uint64_t limit = std::uint64_t{1} << c.n;
  GadgetProfile profile;
  for (std::uint64_t a = 0; a < limit; ++a) {
    if (!c.satisfied(a)) continue;
    bool maximal_elsewhere = true;
    for (int v = 0; v < c.n && maximal_elsewhere; ++v) {
      if (v == distinguished) continue;
      if (((a >> v) & 1u) == 0 && c.raise_keeps_satisfying(a, v)) maximal_elsewhere = false;
    }
    if (!maximal_elsewhere) continue;
    if ((a >> distinguished) & 1u) {
      ++profile.n_max1;
    } else if (c.raise_keeps_satisfying(a, distinguished)) {
      ++profile.n_bad;
    } else {
      ++profile.n_max0;
    }
  }
  return profile;
}

}  // namespace locmax

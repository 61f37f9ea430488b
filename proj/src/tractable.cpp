#include "locmax/tractable.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

namespace locmax {

namespace {

std::string join_names(const Instance& instance, const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += instance.variables()[static_cast<std::size_t>(ids[i])].name;
  }
  return out.empty() ? "(none)" : out;
}

// Iterative Tarjan; component ids are assigned in completion order. Adjacency
// is built from the sorted edge set, so the result is deterministic.
struct SccResult {
  std::vector<int> comp;  // vertex -> component id
  int count = 0;
};

SccResult strongly_connected_components(int n, const std::set<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) adj[static_cast<std::size_t>(u)].push_back(v);

  SccResult res;
  res.comp.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    frames.push_back({root, 0});
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::vector<int>& out = adj[static_cast<std::size_t>(f.v)];
      if (f.child < out.size()) {
        int w = out[f.child++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().v;
          low[static_cast<std::size_t>(parent)] =
              std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
        }
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            res.comp[static_cast<std::size_t>(w)] = res.count;
            if (w == v) break;
          }
          ++res.count;
        }
      }
    }
  }
  return res;
}

}  // namespace

ImplicationInstance::ImplicationInstance(int variables, std::set<std::pair<int, int>> edge_set,
                                         std::set<int> pins0, std::set<int> pins1)
    : variable_count(variables), pinned0(std::move(pins0)), pinned1(std::move(pins1)) {
  if (variables < 0) throw Error(Errc::BadArguments, "negative variable count");
  auto check = [variables](int v) {
    if (v < 0 || v >= variables) {
      throw Error(Errc::UnknownVariable, "implication vertex " + std::to_string(v) + " out of range");
    }
  };
  for (const auto& [u, v] : edge_set) {
    check(u);
    check(v);
    if (u != v) edges.insert({u, v});  // (v, v) is a tautology
  }
  for (int v : pinned0) check(v);
  for (int v : pinned1) check(v);
}

CountReport count_max_monotone(const Instance& instance) {
  // Zero positions of each used relation pin their scope variables; everything
  // else must be 1 in a locally maximal assignment, so a single candidate
  // remains to test.
  std::vector<std::uint8_t> candidate(static_cast<std::size_t>(instance.variable_count()), 1);
  std::map<std::string, std::vector<int>> zero_cache;
  for (const Constraint& c : instance.constraints()) {
    auto it = zero_cache.find(c.relation);
    if (it == zero_cache.end()) {
      const Relation& rel = instance.language().at(c.relation);
      if (!is_essentially_monotone(rel)) {
        throw Error(Errc::LanguageMismatch,
                    "relation '" + c.relation + "' is not essentially monotone");
      }
      it = zero_cache.emplace(c.relation, zero_positions(rel)).first;
    }
    for (int p : it->second) candidate[static_cast<std::size_t>(c.scope[static_cast<std::size_t>(p - 1)])] = 0;
  }

  std::vector<int> pinned;
  for (int v = 0; v < instance.variable_count(); ++v) {
    if (candidate[static_cast<std::size_t>(v)] == 0) pinned.push_back(v);
  }
  Assignment a(candidate);
  bool ok = evaluate(instance, a);

  CountReport report;
  report.value = ok ? 1 : 0;
  report.method = "monotone";
  report.notes.push_back("variables pinned to zero: " + join_names(instance, pinned));
  report.notes.push_back(std::string("candidate assignment ") + (ok ? "satisfies" : "does not satisfy"));
  return report;
}

CountReport count_max_affine(const Instance& instance) {
  const int n = instance.variable_count();
  const std::size_t blocks = (static_cast<std::size_t>(n) + 63) / 64;

  struct Row {
    std::vector<std::uint64_t> bits;
    int rhs;
  };
  auto flip_bit = [](Row& row, int v) { row.bits[static_cast<std::size_t>(v) / 64] ^= std::uint64_t{1} << (v % 64); };
  auto is_zero = [](const Row& row) {
    for (std::uint64_t b : row.bits) {
      if (b != 0) return false;
    }
    return true;
  };

  std::map<std::string, LinearSystemF2> cache;
  std::vector<Row> rows;
  std::vector<bool> constrained(static_cast<std::size_t>(n), false);
  bool inconsistent = false;
  std::size_t collected = 0;

  for (const Constraint& c : instance.constraints()) {
    auto it = cache.find(c.relation);
    if (it == cache.end()) {
      std::optional<LinearSystemF2> sys = affine_decompose(instance.language().at(c.relation));
      if (!sys) {
        throw Error(Errc::LanguageMismatch, "relation '" + c.relation + "' is not affine");
      }
      it = cache.emplace(c.relation, std::move(*sys)).first;
    }
    for (const F2Equation& eq : it->second.equations) {
      Row row{std::vector<std::uint64_t>(blocks, 0), eq.rhs};
      // Scope repeats cancel mod 2.
      for (int p : eq.support) flip_bit(row, c.scope[static_cast<std::size_t>(p - 1)]);
      ++collected;
      if (is_zero(row)) {
        if (row.rhs == 1) inconsistent = true;  // 0 = 1
        continue;
      }
      for (int v = 0; v < n; ++v) {
        if ((row.bits[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1u) {
          constrained[static_cast<std::size_t>(v)] = true;
        }
      }
      rows.push_back(std::move(row));
    }
  }

  int m = static_cast<int>(std::count(constrained.begin(), constrained.end(), true));

  // Gaussian elimination over F2; pivot on the lowest set bit of each row.
  std::vector<Row> pivots;
  std::vector<int> pivot_bit;
  int rank = 0;
  for (Row row : rows) {
    while (!inconsistent) {
      int bit = -1;
      for (std::size_t b = 0; b < blocks && bit < 0; ++b) {
        if (row.bits[b] != 0) bit = static_cast<int>(b * 64) + std::countr_zero(row.bits[b]);
      }
      if (bit < 0) {
        if (row.rhs == 1) inconsistent = true;
        break;
      }
      auto it = std::find(pivot_bit.begin(), pivot_bit.end(), bit);
      if (it == pivot_bit.end()) {
        pivots.push_back(row);
        pivot_bit.push_back(bit);
        ++rank;
        break;
      }
      const Row& p = pivots[static_cast<std::size_t>(it - pivot_bit.begin())];
      for (std::size_t b = 0; b < blocks; ++b) row.bits[b] ^= p.bits[b];
      row.rhs ^= p.rhs;
    }
    if (inconsistent) break;
  }

  CountReport report;
  report.method = "affine";
  report.notes.push_back("collected " + std::to_string(collected) + " equations over " +
                         std::to_string(n) + " variables");
  if (inconsistent) {
    report.value = 0;
    report.notes.push_back("system is inconsistent");
    return report;
  }
  report.notes.push_back("constrained variables: " + std::to_string(m) + ", rank: " +
                         std::to_string(rank));
  report.notes.push_back("count = 2^(" + std::to_string(m) + " - " + std::to_string(rank) + ")");
  report.value = mpz_class(1) << (m - rank);
  return report;
}

ImplicationInstance to_implication_instance(const Instance& instance) {
  std::map<std::string, Im2Decomposition> cache;
  std::set<std::pair<int, int>> edges;
  std::set<int> pins0;
  std::set<int> pins1;
  for (const Constraint& c : instance.constraints()) {
    auto it = cache.find(c.relation);
    if (it == cache.end()) {
      std::optional<Im2Decomposition> d = im2_decompose(instance.language().at(c.relation));
      if (!d) {
        throw Error(Errc::LanguageMismatch,
                    "relation '" + c.relation + "' is not a pin/implication relation");
      }
      it = cache.emplace(c.relation, std::move(*d)).first;
    }
    for (int p : it->second.pins0) pins0.insert(c.scope[static_cast<std::size_t>(p - 1)]);
    for (int p : it->second.pins1) pins1.insert(c.scope[static_cast<std::size_t>(p - 1)]);
    for (auto [p, q] : it->second.implications) {
      int u = c.scope[static_cast<std::size_t>(p - 1)];
      int v = c.scope[static_cast<std::size_t>(q - 1)];
      if (u != v) edges.insert({u, v});
    }
  }
  return ImplicationInstance(instance.variable_count(), std::move(edges), std::move(pins0),
                             std::move(pins1));
}

PruneResult prune(const ImplicationInstance& g) {
  const int n = g.variable_count;
  std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n)), bwd(static_cast<std::size_t>(n));
  for (const auto& [u, v] : g.edges) {
    fwd[static_cast<std::size_t>(u)].push_back(v);
    bwd[static_cast<std::size_t>(v)].push_back(u);
  }
  auto closure = [n](const std::set<int>& seeds, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> mark(static_cast<std::size_t>(n), false);
    std::vector<int> stack(seeds.begin(), seeds.end());
    for (int v : stack) mark[static_cast<std::size_t>(v)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!mark[static_cast<std::size_t>(w)]) {
          mark[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    return mark;
  };

  std::vector<bool> v1 = closure(g.pinned1, fwd);  // forced to 1
  std::vector<bool> v0 = closure(g.pinned0, bwd);  // forced to 0

  PruneResult result{ImplicationInstance(0, {}, {}, {}), true, {}};
  for (int v = 0; v < n; ++v) {
    if (v0[static_cast<std::size_t>(v)] && v1[static_cast<std::size_t>(v)]) {
      result.satisfiable = false;
      return result;
    }
  }

  std::vector<int> new_id(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (!v0[static_cast<std::size_t>(v)] && !v1[static_cast<std::size_t>(v)]) {
      new_id[static_cast<std::size_t>(v)] = static_cast<int>(result.kept.size());
      result.kept.push_back(v);
    }
  }
  std::set<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges) {
    int nu = new_id[static_cast<std::size_t>(u)];
    int nv = new_id[static_cast<std::size_t>(v)];
    if (nu >= 0 && nv >= 0) edges.insert({nu, nv});
  }
  result.reduced =
      ImplicationInstance(static_cast<int>(result.kept.size()), std::move(edges), {}, {});
  return result;
}

std::optional<ImplicationInstance> eliminate_one_singleton(const ImplicationInstance& g) {
  if (!g.pinned0.empty() || !g.pinned1.empty()) {
    throw Error(Errc::BadArguments, "singleton elimination requires a pin-free instance");
  }
  if (g.variable_count <= 1) return std::nullopt;

  SccResult scc = strongly_connected_components(g.variable_count, g.edges);
  std::vector<int> comp_size(static_cast<std::size_t>(scc.count), 0);
  for (int v = 0; v < g.variable_count; ++v) ++comp_size[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])];

  int victim = -1;
  for (int v = 0; v < g.variable_count && victim < 0; ++v) {
    if (comp_size[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])] == 1) victim = v;
  }
  if (victim < 0) return std::nullopt;

  std::vector<int> preds, succs;
  for (const auto& [u, v] : g.edges) {
    if (v == victim && u != victim) preds.push_back(u);
    if (u == victim && v != victim) succs.push_back(v);
  }

  std::set<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges) {
    if (u != victim && v != victim) edges.insert({u, v});
  }
  for (int p : preds) {
    for (int s : succs) {
      // p == s would put the victim on a 2-cycle, contradicting singleton-ness.
      edges.insert({p, s});
    }
  }

  auto renumber = [victim](int v) { return v < victim ? v : v - 1; };
  std::set<std::pair<int, int>> renumbered;
  for (const auto& [u, v] : edges) renumbered.insert({renumber(u), renumber(v)});
  return ImplicationInstance(g.variable_count - 1, std::move(renumbered), {}, {});
}

ImplicationInstance eliminate_singletons(const ImplicationInstance& g) {
  ImplicationInstance current = g;
  while (std::optional<ImplicationInstance> next = eliminate_one_singleton(current)) {
    current = std::move(*next);
  }
  return current;
}

CondensationDag condensation(const ImplicationInstance& g) {
  SccResult scc = strongly_connected_components(g.variable_count, g.edges);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(scc.count));
  for (int v = 0; v < g.variable_count; ++v) {
    members[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])].push_back(v);
  }
  // Components sorted by least member for a stable public order.
  std::vector<int> order(static_cast<std::size_t>(scc.count));
  for (int i = 0; i < scc.count; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&members](int a, int b) {
    return members[static_cast<std::size_t>(a)].front() < members[static_cast<std::size_t>(b)].front();
  });
  std::vector<int> rank(static_cast<std::size_t>(scc.count));
  for (int i = 0; i < scc.count; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  CondensationDag dag;
  dag.components.resize(static_cast<std::size_t>(scc.count));
  for (int i = 0; i < scc.count; ++i) {
    dag.components[static_cast<std::size_t>(rank[static_cast<std::size_t>(i)])] = members[static_cast<std::size_t>(i)];
  }
  for (const auto& [u, v] : g.edges) {
    int cu = rank[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(u)])];
    int cv = rank[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])];
    if (cu != cv) dag.edges.insert({cu, cv});
  }
  return dag;
}

mpz_class count_up_sets(const CondensationDag& dag, int component_cap) {
  const int m = static_cast<int>(dag.components.size());
  const int effective_cap = std::min(component_cap, 63);  // subset masks are 64-bit
  if (m > effective_cap) {
    throw Error(Errc::TooLarge, "condensation has " + std::to_string(m) +
                                    " components, cap is " + std::to_string(effective_cap));
  }
  if (m == 0) return 1;

  std::vector<std::vector<int>> fwd(static_cast<std::size_t>(m)), bwd(static_cast<std::size_t>(m));
  for (const auto& [u, v] : dag.edges) {
    fwd[static_cast<std::size_t>(u)].push_back(v);
    bwd[static_cast<std::size_t>(v)].push_back(u);
  }
  auto reach = [m](const std::vector<std::vector<int>>& adj) {
    std::vector<std::uint64_t> r(static_cast<std::size_t>(m), 0);
    // Repeat-until-stable transitive closure; the DAG is tiny.
    for (int i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < m; ++i) {
        std::uint64_t before = r[static_cast<std::size_t>(i)];
        for (int j : adj[static_cast<std::size_t>(i)]) r[static_cast<std::size_t>(i)] |= r[static_cast<std::size_t>(j)];
        if (r[static_cast<std::size_t>(i)] != before) changed = true;
      }
    }
    return r;
  };
  std::vector<std::uint64_t> up = reach(fwd);
  std::vector<std::uint64_t> down = reach(bwd);

  std::unordered_map<std::uint64_t, mpz_class> memo;
  auto count = [&](auto&& self, std::uint64_t pending) -> mpz_class {
    if (pending == 0) return 1;
    auto it = memo.find(pending);
    if (it != memo.end()) return it->second;
    // Pivot on the vertex most connected within `pending`; least index wins ties.
    int best = -1, best_score = -1;
    for (int i = 0; i < m; ++i) {
      if (((pending >> i) & 1u) == 0) continue;
      int score = std::popcount((up[static_cast<std::size_t>(i)] | down[static_cast<std::size_t>(i)]) & pending);
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    mpz_class result = self(self, pending & ~up[static_cast<std::size_t>(best)]) +
                       self(self, pending & ~down[static_cast<std::size_t>(best)]);
    memo.emplace(pending, result);
    return result;
  };
  return count(count, (std::uint64_t{1} << m) - 1);
}

CountReport count_max_im2(const Instance& instance, int component_cap) {
  CountReport report;
  report.method = "im2-pipeline";

  ImplicationInstance g = to_implication_instance(instance);
  report.notes.push_back("implication instance: " + std::to_string(g.variable_count) +
                         " variables, " + std::to_string(g.edges.size()) + " edges, " +
                         std::to_string(g.pinned0.size()) + " pinned to 0, " +
                         std::to_string(g.pinned1.size()) + " pinned to 1");

  PruneResult pruned = prune(g);
  if (!pruned.satisfiable) {
    report.notes.push_back("prune: a variable is forced to both 0 and 1; unsatisfiable");
    report.value = 0;
    return report;
  }
  report.notes.push_back("prune: " + std::to_string(pruned.reduced.variable_count) +
                         " variables remain, " + std::to_string(pruned.reduced.edges.size()) +
                         " edges");

  ImplicationInstance reduced = eliminate_singletons(pruned.reduced);
  report.notes.push_back("singleton elimination: " +
                         std::to_string(pruned.reduced.variable_count) + " -> " +
                         std::to_string(reduced.variable_count) + " variables");
  if (reduced.variable_count <= 1) {
    report.value = 1;
    report.notes.push_back("at most one variable remains; count is 1");
    return report;
  }

  CondensationDag dag = condensation(reduced);
  report.notes.push_back("condensation: " + std::to_string(dag.components.size()) +
                         " components, " + std::to_string(dag.edges.size()) + " edges");
  report.value = count_up_sets(dag, component_cap);
  report.notes.push_back("up-sets: " + report.value.get_str());
  return report;
}

Instance to_csp_instance(const ImplicationInstance& g) {
  ConstraintLanguage language;
  language.add("Implies", Relation::implies());
  language.add("U0", Relation::u0());
  language.add("U1", Relation::u1());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(g.variable_count));
  for (int v = 0; v < g.variable_count; ++v) names.push_back("v" + std::to_string(v));
  std::vector<Constraint> constraints;
  for (int v : g.pinned0) constraints.push_back(Constraint{"U0", {v}});
  for (int v : g.pinned1) constraints.push_back(Constraint{"U1", {v}});
  for (const auto& [u, v] : g.edges) constraints.push_back(Constraint{"Implies", {u, v}});
  return Instance(std::move(language), std::move(names), std::move(constraints));
}

}  // namespace locmax

#include "locmax/instance.hpp"

#include <algorithm>
#include <unordered_set>

namespace locmax {

Instance::Instance(ConstraintLanguage language, std::vector<std::string> variable_names,
                   std::vector<Constraint> constraints)
    : language_(std::move(language)), constraints_(std::move(constraints)) {
  std::unordered_set<std::string> seen;
  variables_.reserve(variable_names.size());
  for (std::size_t i = 0; i < variable_names.size(); ++i) {
    const std::string& name = variable_names[i];
    if (name.empty()) {
      throw Error(Errc::BadArguments, "variable names must be nonempty");
    }
    if (!seen.insert(name).second) {
      throw Error(Errc::DuplicateName, "variable '" + name + "' already declared");
    }
    variables_.push_back(Variable{static_cast<int>(i), name});
  }
  for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
    const Constraint& c = constraints_[ci];
    const Relation* rel = language_.find(c.relation);
    if (rel == nullptr) {
      throw Error(Errc::UnknownRelation,
                  "constraint " + std::to_string(ci) + " uses unknown relation '" + c.relation + "'");
    }
    if (static_cast<int>(c.scope.size()) != rel->arity()) {
      throw Error(Errc::ArityMismatch,
                  "constraint " + std::to_string(ci) + " has " + std::to_string(c.scope.size()) +
                      " variables for relation '" + c.relation + "' of arity " +
                      std::to_string(rel->arity()));
    }
    for (int v : c.scope) {
      if (v < 0 || v >= variable_count()) {
        throw Error(Errc::UnknownVariable,
                    "constraint " + std::to_string(ci) + " references variable id " + std::to_string(v));
      }
    }
  }
}

int Instance::variable_id(std::string_view name) const {
  for (const Variable& v : variables_) {
    if (v.name == name) return v.id;
  }
  return -1;
}

Assignment::Assignment(std::vector<std::uint8_t> values) : values_(std::move(values)) {
  for (std::uint8_t b : values_) {
    if (b > 1) throw Error(Errc::BadArguments, "assignment values are 0 or 1");
  }
}

Assignment Assignment::all_zero(int count) {
  return Assignment(std::vector<std::uint8_t>(static_cast<std::size_t>(count), 0));
}

Assignment Assignment::all_one(int count) {
  return Assignment(std::vector<std::uint8_t>(static_cast<std::size_t>(count), 1));
}

bool Assignment::value(int variable) const {
  if (variable < 0 || variable >= size()) {
    throw Error(Errc::UnknownVariable, "variable id " + std::to_string(variable) + " out of range");
  }
  return values_[static_cast<std::size_t>(variable)] != 0;
}

bool evaluate(const Instance& instance, const Assignment& a) {
  if (a.size() != instance.variable_count()) {
    throw Error(Errc::ArityMismatch, "assignment size " + std::to_string(a.size()) +
                                         " for instance with " +
                                         std::to_string(instance.variable_count()) + " variables");
  }
  for (const Constraint& c : instance.constraints()) {
    const Relation& rel = instance.relation_of(c);
    TupleWord w = 0;
    for (int v : c.scope) w = static_cast<TupleWord>((w << 1) | (a.value(v) ? 1u : 0u));
    if (!rel.contains(w)) return false;
  }
  return true;
}

Assignment flip_to_one(const Assignment& a, int v) {
  a.value(v);  // range check
  std::vector<std::uint8_t> values = a.values();
  values[static_cast<std::size_t>(v)] = 1;
  return Assignment(std::move(values));
}

bool is_maximal_for(const Instance& instance, const Assignment& a, int v) {
  if (!evaluate(instance, a)) {
    throw Error(Errc::NotSatisfying, "maximality is defined on satisfying assignments only");
  }
  if (a.value(v)) return true;
  return !evaluate(instance, flip_to_one(a, v));
}

bool is_locally_maximal(const Instance& instance, const Assignment& a) {
  if (!evaluate(instance, a)) {
    throw Error(Errc::NotSatisfying, "maximality is defined on satisfying assignments only");
  }
  for (const Variable& v : instance.variables()) {
    if (!a.value(v.id) && evaluate(instance, flip_to_one(a, v.id))) return false;
  }
  return true;
}

}  // namespace locmax

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locmax/relation.hpp"

namespace locmax {

struct Variable {
  int id;            // contiguous from 0, equal to the index in the variable list
  std::string name;  // unique within the instance
};

struct Constraint {
  std::string relation;    // name in the instance's language
  std::vector<int> scope;  // variable ids; length equals the relation's arity;
                           // repeats are allowed
};

// A CSP instance over a constraint language. Owns a copy of its language so it
// stays self-contained and immutable after construction. Zero variables and
// zero constraints are both legal.
class Instance {
 public:
  Instance(ConstraintLanguage language, std::vector<std::string> variable_names,
           std::vector<Constraint> constraints);

  const ConstraintLanguage& language() const { return language_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  int variable_count() const { return static_cast<int>(variables_.size()); }
  // -1 when the name is not declared.
  int variable_id(std::string_view name) const;
  const Relation& relation_of(const Constraint& c) const { return language_.at(c.relation); }

 private:
  ConstraintLanguage language_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

// Total 0/1 assignment to an instance's variables, indexed by variable id.
class Assignment {
 public:
  explicit Assignment(std::vector<std::uint8_t> values);
  static Assignment all_zero(int count);
  static Assignment all_one(int count);

  int size() const { return static_cast<int>(values_.size()); }
  bool value(int variable) const;
  const std::vector<std::uint8_t>& values() const { return values_; }

  bool operator==(const Assignment& other) const = default;

 private:
  std::vector<std::uint8_t> values_;
};

// True when every constraint's scope tuple lies in its relation. A zero
// constraint instance is satisfied by anything of the right size.
bool evaluate(const Instance& instance, const Assignment& a);

// Copy of a with variable v set to 1 (v may already be 1).
Assignment flip_to_one(const Assignment& a, int v);

// Requires a satisfying (errors NotSatisfying otherwise). An assignment is
// maximal for v when a(v) = 1 already or raising v breaks satisfaction.
bool is_maximal_for(const Instance& instance, const Assignment& a, int v);

// Satisfying and maximal for every variable.
bool is_locally_maximal(const Instance& instance, const Assignment& a);

}  // namespace locmax

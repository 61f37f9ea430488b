#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locmax/error.hpp"

namespace locmax {

// A k-tuple over {0,1} packed into a word. Position 1 sits at the most
// significant of the k used bits, so numeric order on the word is exactly
// lexicographic order on the tuple.
using TupleWord = std::uint32_t;

class BitTuple {
 public:
  static constexpr int kMaxArity = 16;

  BitTuple(int arity, TupleWord word);

  static BitTuple all_zero(int arity);
  static BitTuple all_one(int arity);
  // Unit tuple e_{position,arity}: 1 at the given (1-based) position, 0 elsewhere.
  static BitTuple unit(int position, int arity);
  // Parses a 0/1 string such as "0101"; arity is the string length.
  static BitTuple parse(std::string_view text);

  int arity() const { return arity_; }
  TupleWord word() const { return word_; }

  // 1-based position access.
  bool bit(int position) const;
  BitTuple with_bit(int position, bool value) const;

  int ones() const;

  BitTuple operator|(const BitTuple& other) const;
  BitTuple operator&(const BitTuple& other) const;
  BitTuple operator~() const;

  bool operator==(const BitTuple& other) const = default;
  auto operator<=>(const BitTuple& other) const = default;

  std::string to_string() const;

 private:
  int arity_;
  TupleWord word_;
};

// A nonempty set of same-arity tuples, stored sorted (canonical order).
// Arity is capped at kMaxArity = 16; this is a documented limit of the tool,
// not silent truncation.
class Relation {
 public:
  static constexpr int kMaxArity = BitTuple::kMaxArity;

  Relation(int arity, const std::vector<BitTuple>& tuples);
  static Relation from_words(int arity, std::vector<TupleWord> words);

  // Stock relations used throughout: Implies = {00,01,11}, U0 = {0}, U1 = {1}.
  static Relation implies();
  static Relation u0();
  static Relation u1();
  static Relation complete(int arity);

  int arity() const { return arity_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<TupleWord>& words() const { return words_; }
  std::vector<BitTuple> tuples() const;

  bool contains(TupleWord word) const;
  bool contains(const BitTuple& tuple) const;

  bool operator==(const Relation& other) const = default;

 private:
  int arity_;
  std::vector<TupleWord> words_;  // sorted, unique
};

// Ordered name -> relation map; order is insertion order and is the "language
// order" used for witness selection. Capped at kMaxRelations entries.
class ConstraintLanguage {
 public:
  static constexpr std::size_t kMaxRelations = 64;

  ConstraintLanguage() = default;

  void add(const std::string& name, Relation relation);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Relation* find(std::string_view name) const;
  const Relation& at(std::string_view name) const;
  const std::pair<std::string, Relation>& entry(std::size_t index) const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const ConstraintLanguage& other) const = default;

 private:
  std::vector<std::pair<std::string, Relation>> entries_;
};

// --- basic predicates -------------------------------------------------------

bool is_zero_valid(const Relation& r);
bool is_one_valid(const Relation& r);

// Positions (1-based, sorted) at which every tuple of r is 0.
std::vector<int> zero_positions(const Relation& r);

struct Projection {
  Relation relation;              // r restricted to its nonzero positions
  std::vector<int> position_map;  // 1-based: position_map[q-1] = source position of output position q
};

// Drops the always-zero positions. Errors with AllPositionsZero when every
// position is zero (r = {all-zero tuple}).
Projection project_nonzero(const Relation& r);

// Closed under raising any single position to 1.
bool is_monotone(const Relation& r);

// project_nonzero(r) is monotone; the degenerate {all-zero} relation counts
// as essentially monotone.
bool is_essentially_monotone(const Relation& r);

// --- affine structure -------------------------------------------------------

struct F2Equation {
  std::vector<int> support;  // sorted variable indices; XOR of these equals rhs
  int rhs = 0;
};

struct LinearSystemF2 {
  std::vector<int> variables;
  std::vector<F2Equation> equations;
  // A contradictory system (0 = 1 derived) is flagged rather than encoded as
  // an empty-support equation with rhs 1.
  bool inconsistent = false;
};

// When r is the solution set of an XOR-equation system over positions 1..k,
// returns such a system (support-minimal basis); otherwise nullopt.
std::optional<LinearSystemF2> affine_decompose(const Relation& r);
bool is_affine(const Relation& r);

// --- pin/implication structure ----------------------------------------------

struct Im2Decomposition {
  std::vector<int> pins0;                          // positions forced to 0
  std::vector<int> pins1;                          // positions forced to 1
  std::vector<std::pair<int, int>> implications;   // (i, j): position i = 1 forces position j = 1
};

// Membership test for the class of relations expressible as conjunctions of
// pins and single implications over their own positions: collects the maximal
// set D of such constraints satisfied by every tuple and accepts iff the
// solution set of D is exactly r. The returned decomposition is that maximal
// set; use minimize_decomposition for a human-sized equivalent.
std::optional<Im2Decomposition> im2_decompose(const Relation& r);
bool is_im2(const Relation& r);

// Display-time reduction: drops implications absorbed by pins and edges
// implied by transitivity. Never used for membership decisions.
Im2Decomposition minimize_decomposition(const Im2Decomposition& d);

// --- products and classification ---------------------------------------------

// Concatenation product: arity k1 + k2, tuples st for s in a, t in b.
Relation product(const Relation& a, const Relation& b);

struct Witnesses {
  std::optional<std::string> non_essentially_monotone;
  std::optional<std::string> non_affine;
  std::optional<std::string> non_im2;
};

// First relation in language order failing each property (absent when none).
Witnesses find_witnesses(const ConstraintLanguage& language);

enum class ExactClass { Polynomial, SharpPComplete };
enum class ApproxClass { FpMonotone, FpAffine, BisEquivalent, SatEquivalent };

const char* to_string(ExactClass c);
const char* to_string(ApproxClass c);

struct Classification {
  ExactClass exact;
  ApproxClass approx;
  Witnesses witnesses;
};

// Decision order: all relations essentially monotone -> FP_MONOTONE; else all
// affine -> FP_AFFINE; else all in the pin/implication class -> BIS_EQUIVALENT;
// else SAT_EQUIVALENT. The first two are POLYNOMIAL, the last two #P-complete.
Classification classify_language(const ConstraintLanguage& language);

}  // namespace locmax

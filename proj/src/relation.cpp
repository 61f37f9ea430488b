#include "locmax/relation.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace locmax {

namespace {

void check_arity(int arity) {
  if (arity < 1 || arity > BitTuple::kMaxArity) {
    throw Error(Errc::ArityOutOfRange,
                "arity " + std::to_string(arity) + " outside 1.." +
                    std::to_string(BitTuple::kMaxArity));
  }
}

}  // namespace

const char* to_string(Errc code) {
  switch (code) {
    case Errc::EmptyRelation: return "EmptyRelation";
    case Errc::ArityOutOfRange: return "ArityOutOfRange";
    case Errc::TupleOutOfRange: return "TupleOutOfRange";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::AllPositionsZero: return "AllPositionsZero";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::TooManyRelations: return "TooManyRelations";
    case Errc::UnknownRelation: return "UnknownRelation";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::EmptyLanguage: return "EmptyLanguage";
    case Errc::NotSatisfying: return "NotSatisfying";
    case Errc::TooLarge: return "TooLarge";
    case Errc::LanguageMismatch: return "LanguageMismatch";
    case Errc::EssentiallyMonotone: return "EssentiallyMonotone";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::RelationMismatch: return "RelationMismatch";
    case Errc::ReservedName: return "ReservedName";
    case Errc::WitnessMissing: return "WitnessMissing";
    case Errc::BadArguments: return "BadArguments";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

// --- BitTuple ----------------------------------------------------------------

BitTuple::BitTuple(int arity, TupleWord word) : arity_(arity), word_(word) {
  check_arity(arity);
  if (word >> arity) {
    throw Error(Errc::TupleOutOfRange, "tuple word exceeds arity " + std::to_string(arity));
  }
}

BitTuple BitTuple::all_zero(int arity) { return BitTuple(arity, 0); }

BitTuple BitTuple::all_one(int arity) {
  check_arity(arity);
  return BitTuple(arity, static_cast<TupleWord>((1u << arity) - 1));
}

BitTuple BitTuple::unit(int position, int arity) {
  check_arity(arity);
  if (position < 1 || position > arity) {
    throw Error(Errc::TupleOutOfRange, "position " + std::to_string(position) +
                                           " outside 1.." + std::to_string(arity));
  }
  return BitTuple(arity, static_cast<TupleWord>(1u << (arity - position)));
}

BitTuple BitTuple::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxArity)) {
    throw Error(Errc::ArityOutOfRange, "tuple string length outside 1.." +
                                           std::to_string(kMaxArity));
  }
  TupleWord w = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(Errc::TupleOutOfRange, "tuple strings are over {0,1}");
    }
    w = static_cast<TupleWord>((w << 1) | (c == '1'));
  }
  return BitTuple(static_cast<int>(text.size()), w);
}

bool BitTuple::bit(int position) const {
  if (position < 1 || position > arity_) {
    throw Error(Errc::TupleOutOfRange, "position " + std::to_string(position) +
                                           " outside 1.." + std::to_string(arity_));
  }
  return (word_ >> (arity_ - position)) & 1u;
}

BitTuple BitTuple::with_bit(int position, bool value) const {
  bit(position);  // range check
  TupleWord mask = static_cast<TupleWord>(1u << (arity_ - position));
  return BitTuple(arity_, value ? (word_ | mask) : (word_ & ~mask));
}

int BitTuple::ones() const { return std::popcount(word_); }

BitTuple BitTuple::operator|(const BitTuple& other) const {
  if (arity_ != other.arity_) throw Error(Errc::ArityMismatch, "tuple arity mismatch");
  return BitTuple(arity_, word_ | other.word_);
}

BitTuple BitTuple::operator&(const BitTuple& other) const {
  if (arity_ != other.arity_) throw Error(Errc::ArityMismatch, "tuple arity mismatch");
  return BitTuple(arity_, word_ & other.word_);
}

BitTuple BitTuple::operator~() const {
  return BitTuple(arity_, static_cast<TupleWord>(~word_ & ((1u << arity_) - 1)));
}

std::string BitTuple::to_string() const {
  std::string s(static_cast<std::size_t>(arity_), '0');
  for (int i = 0; i < arity_; ++i) {
    if ((word_ >> (arity_ - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

// --- Relation ----------------------------------------------------------------

Relation::Relation(int arity, const std::vector<BitTuple>& tuples) : arity_(arity) {
  check_arity(arity);
  for (const BitTuple& t : tuples) {
    if (t.arity() != arity) {
      throw Error(Errc::ArityMismatch, "tuple arity " + std::to_string(t.arity()) +
                                           " in relation of arity " + std::to_string(arity));
    }
    words_.push_back(t.word());
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  if (words_.empty()) {
    throw Error(Errc::EmptyRelation, "relations must contain at least one tuple");
  }
}

Relation Relation::from_words(int arity, std::vector<TupleWord> words) {
  check_arity(arity);
  std::vector<BitTuple> ts;
  ts.reserve(words.size());
  for (TupleWord w : words) ts.emplace_back(arity, w);
  return Relation(arity, ts);
}

Relation Relation::implies() { return from_words(2, {0b00, 0b01, 0b11}); }
Relation Relation::u0() { return from_words(1, {0}); }
Relation Relation::u1() { return from_words(1, {1}); }

Relation Relation::complete(int arity) {
  check_arity(arity);
  std::vector<TupleWord> ws;
  for (TupleWord w = 0; w < (1u << arity); ++w) ws.push_back(w);
  return from_words(arity, std::move(ws));
}

std::vector<BitTuple> Relation::tuples() const {
  std::vector<BitTuple> ts;
  ts.reserve(words_.size());
  for (TupleWord w : words_) ts.emplace_back(arity_, w);
  return ts;
}

bool Relation::contains(TupleWord word) const {
  return std::binary_search(words_.begin(), words_.end(), word);
}

bool Relation::contains(const BitTuple& tuple) const {
  return tuple.arity() == arity_ && contains(tuple.word());
}

// --- ConstraintLanguage -------------------------------------------------------

void ConstraintLanguage::add(const std::string& name, Relation relation) {
  if (find(name) != nullptr) {
    throw Error(Errc::DuplicateName, "relation '" + name + "' already declared");
  }
  if (entries_.size() >= kMaxRelations) {
    throw Error(Errc::TooManyRelations,
                "languages hold at most " + std::to_string(kMaxRelations) + " relations");
  }
  entries_.emplace_back(name, std::move(relation));
}

const Relation* ConstraintLanguage::find(std::string_view name) const {
  for (const auto& [n, r] : entries_) {
    if (n == name) return &r;
  }
  return nullptr;
}

const Relation& ConstraintLanguage::at(std::string_view name) const {
  const Relation* r = find(name);
  if (r == nullptr) {
    throw Error(Errc::UnknownRelation, "unknown relation '" + std::string(name) + "'");
  }
  return *r;
}

const std::pair<std::string, Relation>& ConstraintLanguage::entry(std::size_t index) const {
  return entries_.at(index);
}

// --- predicates ---------------------------------------------------------------

bool is_zero_valid(const Relation& r) { return r.contains(TupleWord{0}); }

bool is_one_valid(const Relation& r) {
  return r.contains(static_cast<TupleWord>((1u << r.arity()) - 1));
}

namespace {

TupleWord or_of_tuples(const Relation& r) {
  TupleWord acc = 0;
  for (TupleWord w : r.words()) acc |= w;
  return acc;
}

TupleWord and_of_tuples(const Relation& r) {
  TupleWord acc = static_cast<TupleWord>((1u << r.arity()) - 1);
  for (TupleWord w : r.words()) acc &= w;
  return acc;
}

}  // namespace

std::vector<int> zero_positions(const Relation& r) {
  TupleWord seen = or_of_tuples(r);
  std::vector<int> zs;
  for (int p = 1; p <= r.arity(); ++p) {
    if (((seen >> (r.arity() - p)) & 1u) == 0) zs.push_back(p);
  }
  return zs;
}

Projection project_nonzero(const Relation& r) {
  std::vector<int> zs = zero_positions(r);
  if (static_cast<int>(zs.size()) == r.arity()) {
    throw Error(Errc::AllPositionsZero, "every position of the relation is zero");
  }
  std::vector<int> keep;
  for (int p = 1; p <= r.arity(); ++p) {
    if (!std::binary_search(zs.begin(), zs.end(), p)) keep.push_back(p);
  }
  int k = static_cast<int>(keep.size());
  std::vector<TupleWord> out;
  out.reserve(r.size());
  for (TupleWord w : r.words()) {
    TupleWord v = 0;
    for (int q = 0; q < k; ++q) {
      v = static_cast<TupleWord>((v << 1) | ((w >> (r.arity() - keep[static_cast<std::size_t>(q)])) & 1u));
    }
    out.push_back(v);
  }
  return Projection{Relation::from_words(k, std::move(out)), std::move(keep)};
}

bool is_monotone(const Relation& r) {
  for (TupleWord w : r.words()) {
    for (int p = 0; p < r.arity(); ++p) {
      if (!r.contains(static_cast<TupleWord>(w | (1u << p)))) return false;
    }
  }
  return true;
}

bool is_essentially_monotone(const Relation& r) {
  if (static_cast<int>(zero_positions(r).size()) == r.arity()) return true;
  return is_monotone(project_nonzero(r).relation);
}

// --- affine -------------------------------------------------------------------

std::optional<LinearSystemF2> affine_decompose(const Relation& r) {
  const int k = r.arity();
  const TupleWord t0 = r.words().front();

  // Row-reduce the difference vectors t ^ t0; pivot on the most significant
  // set bit so pivots align with the leftmost tuple positions.
  std::vector<TupleWord> pivot(static_cast<std::size_t>(k), 0);  // pivot[b] has leading bit b
  int dim = 0;
  for (TupleWord w : r.words()) {
    TupleWord v = w ^ t0;
    while (v != 0) {
      int b = std::bit_width(v) - 1;
      if (pivot[static_cast<std::size_t>(b)] == 0) {
        pivot[static_cast<std::size_t>(b)] = v;
        ++dim;
        break;
      }
      v ^= pivot[static_cast<std::size_t>(b)];
    }
  }
  if (r.size() != (std::size_t{1} << dim)) return std::nullopt;

  // Full reduction: clear every pivot bit from the other pivot rows.
  for (int b = 0; b < k; ++b) {
    TupleWord row = pivot[static_cast<std::size_t>(b)];
    if (row == 0) continue;
    for (int c = 0; c < k; ++c) {
      if (c == b || pivot[static_cast<std::size_t>(c)] == 0) continue;
      if ((pivot[static_cast<std::size_t>(c)] >> b) & 1u) {
        pivot[static_cast<std::size_t>(c)] ^= row;
      }
    }
  }

  // Kernel basis: one vector per free bit; its equation pins r exactly.
  LinearSystemF2 sys;
  for (int p = 1; p <= k; ++p) sys.variables.push_back(p);
  for (int p = 1; p <= k; ++p) {  // external position order for determinism
    int b = k - p;                // bit index of position p
    if (pivot[static_cast<std::size_t>(b)] != 0) continue;
    TupleWord c = static_cast<TupleWord>(1u << b);
    for (int pb = 0; pb < k; ++pb) {
      TupleWord row = pivot[static_cast<std::size_t>(pb)];
      if (row != 0 && ((row >> b) & 1u)) c |= static_cast<TupleWord>(1u << pb);
    }
    F2Equation eq;
    for (int q = 1; q <= k; ++q) {
      if ((c >> (k - q)) & 1u) eq.support.push_back(q);
    }
    eq.rhs = std::popcount(c & t0) & 1;
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

bool is_affine(const Relation& r) { return affine_decompose(r).has_value(); }

// --- pins and implications -----------------------------------------------------

std::optional<Im2Decomposition> im2_decompose(const Relation& r) {
  const int k = r.arity();
  const TupleWord full = static_cast<TupleWord>((1u << k) - 1);
  const TupleWord seen_or = or_of_tuples(r);
  const TupleWord seen_and = and_of_tuples(r);

  // force[i] = AND of all tuples with bit i set (all-ones when none): position
  // i = 1 forces exactly the positions still set in force[i].
  std::vector<TupleWord> force(static_cast<std::size_t>(k), full);
  for (TupleWord w : r.words()) {
    for (int b = 0; b < k; ++b) {
      if ((w >> b) & 1u) force[static_cast<std::size_t>(b)] &= w;
    }
  }

  Im2Decomposition d;
  for (int p = 1; p <= k; ++p) {
    int b = k - p;
    if (((seen_or >> b) & 1u) == 0) d.pins0.push_back(p);
    if ((seen_and >> b) & 1u) d.pins1.push_back(p);
    for (int q = 1; q <= k; ++q) {
      if (q == p) continue;
      if ((force[static_cast<std::size_t>(b)] >> (k - q)) & 1u) d.implications.emplace_back(p, q);
    }
  }

  // Accept iff the maximal constraint set cuts out exactly r.
  TupleWord mask0 = 0, mask1 = 0;
  for (int p : d.pins0) mask0 |= static_cast<TupleWord>(1u << (k - p));
  for (int p : d.pins1) mask1 |= static_cast<TupleWord>(1u << (k - p));
  for (TupleWord w = 0; w <= full; ++w) {
    bool ok = (w & mask0) == 0 && (w & mask1) == mask1;
    for (int b = 0; ok && b < k; ++b) {
      if ((w >> b) & 1u) ok = (force[static_cast<std::size_t>(b)] & ~w & full) == 0;
    }
    if (ok != r.contains(w)) return std::nullopt;
  }
  return d;
}

bool is_im2(const Relation& r) { return im2_decompose(r).has_value(); }

Im2Decomposition minimize_decomposition(const Im2Decomposition& d) {
  Im2Decomposition out;
  out.pins0 = d.pins0;
  out.pins1 = d.pins1;

  std::set<std::pair<int, int>> edges;
  for (auto [i, j] : d.implications) {
    bool absorbed = std::binary_search(d.pins0.begin(), d.pins0.end(), i) ||
                    std::binary_search(d.pins1.begin(), d.pins1.end(), j);
    if (!absorbed) edges.insert({i, j});
  }

  // Drop edges still derivable from the remaining ones (path of length >= 2).
  auto reachable = [&edges](int from, int to, std::pair<int, int> skip) {
    std::vector<int> stack{from};
    std::set<int> seen{from};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : edges) {
        if (e.first != v || e == skip) continue;
        if (e.second == to) return true;
        if (seen.insert(e.second).second) stack.push_back(e.second);
      }
    }
    return false;
  };
  for (auto it = edges.begin(); it != edges.end();) {
    if (reachable(it->first, it->second, *it)) {
      it = edges.erase(it);
    } else {
      ++it;
    }
  }
  out.implications.assign(edges.begin(), edges.end());
  return out;
}

// --- product and classification -------------------------------------------------

Relation product(const Relation& a, const Relation& b) {
  int arity = a.arity() + b.arity();
  check_arity(arity);
  std::vector<TupleWord> ws;
  ws.reserve(a.size() * b.size());
  for (TupleWord s : a.words()) {
    for (TupleWord t : b.words()) {
      ws.push_back(static_cast<TupleWord>((s << b.arity()) | t));
    }
  }
  return Relation::from_words(arity, std::move(ws));
}

Witnesses find_witnesses(const ConstraintLanguage& language) {
  if (language.empty()) {
    throw Error(Errc::EmptyLanguage, "language holds no relations");
  }
  Witnesses w;
  for (const auto& [name, rel] : language) {
    if (!w.non_essentially_monotone && !is_essentially_monotone(rel)) {
      w.non_essentially_monotone = name;
    }
    if (!w.non_affine && !is_affine(rel)) w.non_affine = name;
    if (!w.non_im2 && !is_im2(rel)) w.non_im2 = name;
  }
  return w;
}

const char* to_string(ExactClass c) {
  return c == ExactClass::Polynomial ? "POLYNOMIAL" : "SHARP_P_COMPLETE";
}

const char* to_string(ApproxClass c) {
  switch (c) {
    case ApproxClass::FpMonotone: return "FP_MONOTONE";
    case ApproxClass::FpAffine: return "FP_AFFINE";
    case ApproxClass::BisEquivalent: return "BIS_EQUIVALENT";
    case ApproxClass::SatEquivalent: return "SAT_EQUIVALENT";
  }
  return "UNKNOWN";
}

Classification classify_language(const ConstraintLanguage& language) {
  Witnesses w = find_witnesses(language);
  if (!w.non_essentially_monotone) {
    return {ExactClass::Polynomial, ApproxClass::FpMonotone, w};
  }
  if (!w.non_affine) {
    return {ExactClass::Polynomial, ApproxClass::FpAffine, w};
  }
  if (!w.non_im2) {
    return {ExactClass::SharpPComplete, ApproxClass::BisEquivalent, w};
  }
  return {ExactClass::SharpPComplete, ApproxClass::SatEquivalent, w};
}

}  // namespace locmax

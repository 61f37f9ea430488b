#include <doctest.h>

#include "locmax/instance.hpp"

using namespace locmax;

namespace {

Relation rel(int arity, std::initializer_list<const char*> tuples) {
  std::vector<TupleWord> words;
  for (const char* t : tuples) words.push_back(BitTuple::parse(t).word());
  return Relation::from_words(arity, std::move(words));
}

// The five-variable two-constraint fixture used across the suite:
// R = {000, 001, 100, 011, 111}, constraints R(v1,v2,v3) and R(v3,v4,v5).
Instance fixture() {
  ConstraintLanguage lang;
  lang.add("R", rel(3, {"000", "001", "100", "011", "111"}));
  return Instance(lang, {"v1", "v2", "v3", "v4", "v5"},
                  {{"R", {0, 1, 2}}, {"R", {2, 3, 4}}});
}

Assignment asg(std::initializer_list<int> bits) {
  std::vector<std::uint8_t> v;
  for (int b : bits) v.push_back(static_cast<std::uint8_t>(b));
  return Assignment(std::move(v));
}

}  // namespace

TEST_CASE("instance construction validates names, relations, and scopes") {
  ConstraintLanguage lang;
  lang.add("R", rel(2, {"01", "10"}));

  CHECK_NOTHROW(Instance(lang, {"a", "b"}, {{"R", {0, 1}}}));
  CHECK_NOTHROW(Instance(lang, {}, {}));                    // empty instance is legal
  CHECK_NOTHROW(Instance(lang, {"a"}, {{"R", {0, 0}}}));    // repeated scope entries

  CHECK_THROWS_AS(Instance(lang, {"a", "a"}, {}), Error);   // duplicate name
  CHECK_THROWS_AS(Instance(lang, {""}, {}), Error);         // empty name
  CHECK_THROWS_AS(Instance(lang, {"a"}, {{"S", {0, 0}}}), Error);   // unknown relation
  CHECK_THROWS_AS(Instance(lang, {"a"}, {{"R", {0}}}), Error);      // arity mismatch
  CHECK_THROWS_AS(Instance(lang, {"a"}, {{"R", {0, 1}}}), Error);   // bad variable id
  CHECK_THROWS_AS(Instance(lang, {"a"}, {{"R", {0, -1}}}), Error);
}

TEST_CASE("variable lookup by name") {
  Instance i = fixture();
  CHECK(i.variable_count() == 5);
  CHECK(i.variable_id("v1") == 0);
  CHECK(i.variable_id("v5") == 4);
  CHECK(i.variable_id("nope") == -1);
  CHECK(i.variables()[2].name == "v3");
  CHECK(i.variables()[2].id == 2);
  CHECK(i.relation_of(i.constraints()[0]).arity() == 3);
}

TEST_CASE("assignment basics") {
  Assignment a = asg({1, 0, 1});
  CHECK(a.size() == 3);
  CHECK(a.value(0));
  CHECK_FALSE(a.value(1));
  CHECK(Assignment::all_zero(2) == asg({0, 0}));
  CHECK(Assignment::all_one(2) == asg({1, 1}));
  CHECK(flip_to_one(asg({0, 0}), 1) == asg({0, 1}));
  CHECK(flip_to_one(asg({1, 0}), 0) == asg({1, 0}));
}

TEST_CASE("evaluation of the worked five-variable example") {
  Instance i = fixture();
  // sigma_1 = 00110 fails the second constraint: (1,1,0) is excluded.
  CHECK_FALSE(evaluate(i, asg({0, 0, 1, 1, 0})));
  // sigma_2 = 00111 and sigma_3 = 11100 satisfy both constraints.
  CHECK(evaluate(i, asg({0, 0, 1, 1, 1})));
  CHECK(evaluate(i, asg({1, 1, 1, 0, 0})));
}

TEST_CASE("maximality of the worked example assignments") {
  Instance i = fixture();
  Assignment sigma2 = asg({0, 0, 1, 1, 1});
  // Not maximal for v2 (raising it keeps satisfaction), maximal for the rest.
  CHECK_FALSE(is_maximal_for(i, sigma2, 1));
  CHECK(is_maximal_for(i, sigma2, 0));
  CHECK(is_maximal_for(i, sigma2, 2));
  CHECK(is_maximal_for(i, sigma2, 3));
  CHECK(is_maximal_for(i, sigma2, 4));
  CHECK_FALSE(is_locally_maximal(i, sigma2));

  Assignment sigma3 = asg({1, 1, 1, 0, 0});
  CHECK(is_locally_maximal(i, sigma3));

  // Maximality is only defined on satisfying assignments.
  CHECK_THROWS_AS(is_maximal_for(i, asg({0, 0, 1, 1, 0}), 0), Error);
  CHECK_THROWS_AS(is_locally_maximal(i, asg({0, 0, 1, 1, 0})), Error);
}

TEST_CASE("a variable already at one is trivially maximal") {
  Instance i = fixture();
  Assignment all_one = Assignment::all_one(5);
  REQUIRE(evaluate(i, all_one));
  for (int v = 0; v < 5; ++v) CHECK(is_maximal_for(i, all_one, v));
  CHECK(is_locally_maximal(i, all_one));
}

TEST_CASE("zero-constraint instances accept everything and only all-ones is maximal") {
  ConstraintLanguage lang;
  lang.add("R", rel(2, {"01", "10"}));
  Instance i(lang, {"a", "b"}, {});
  CHECK(evaluate(i, asg({0, 0})));
  CHECK(evaluate(i, asg({1, 1})));
  CHECK_FALSE(is_locally_maximal(i, asg({0, 1})));
  CHECK(is_locally_maximal(i, asg({1, 1})));
}

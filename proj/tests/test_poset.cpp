#include <catch2/catch_amalgamated.hpp>

#include "tstruct/poset.hpp"

using namespace tstruct;

namespace {

std::shared_ptr<SpecSpace> chain2() {
  return std::make_shared<SpecSpace>(
      std::vector<std::string>{"eta", "m"},
      std::vector<std::pair<std::string, std::string>>{{"eta", "m"}});
}

std::shared_ptr<SpecSpace> chain3() {
  return std::make_shared<SpecSpace>(
      std::vector<std::string>{"a", "b", "c"},
      std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}});
}

// Boolean lattice of monomial primes of k[x,y]: (0) < (x),(y) < (x,y)
std::shared_ptr<SpecSpace> boolean2() {
  return std::make_shared<SpecSpace>(
      std::vector<std::string>{"(0)", "(x)", "(y)", "(x,y)"},
      std::vector<std::pair<std::string, std::string>>{
          {"(0)", "(x)"}, {"(0)", "(y)"}, {"(x)", "(x,y)"}, {"(y)", "(x,y)"}},
      std::map<std::string, bool>{},
      std::map<std::string, int>{{"(0)", 0}, {"(x)", 1}, {"(y)", 1}, {"(x,y)", 2}});
}

std::vector<std::string> names(const SpecSpace& x, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(x.id(i));
  return out;
}

}  // namespace

TEST_CASE("closure on a chain") {
  auto x = chain2();
  CHECK(closure(*x, {x->must_index("eta")}).members ==
        std::vector<int>{x->must_index("eta"), x->must_index("m")});
  CHECK(closure(*x, {x->must_index("m")}).members ==
        std::vector<int>{x->must_index("m")});
}

TEST_CASE("closure in the Boolean lattice") {
  auto x = boolean2();
  auto c = closure(*x, {x->must_index("(x)")});
  CHECK(names(*x, c.members) == std::vector<std::string>{"(x)", "(x,y)"});
}

TEST_CASE("closure is idempotent and monotone") {
  auto x = boolean2();
  for (int p = 0; p < x->size(); ++p) {
    auto c = closure(*x, {p});
    CHECK(closure(*x, c.members) == c);
    for (int q = 0; q < x->size(); ++q) {
      auto big = closure(*x, {p, q});
      CHECK(c.subset_of(big));
    }
  }
}

TEST_CASE("direct generalizations") {
  auto x = chain3();
  CHECK(names(*x, direct_generalizations(*x, x->must_index("c"))) ==
        std::vector<std::string>{"b"});

  auto b = boolean2();
  CHECK(names(*b, direct_generalizations(*b, b->must_index("(x,y)"))) ==
        std::vector<std::string>{"(x)", "(y)"});

  SpecSpace anti({"a", "b"}, {});
  CHECK(direct_generalizations(anti, anti.must_index("a")).empty());
}

TEST_CASE("every strict generalization is reached by cover steps") {
  auto x = boolean2();
  for (int q = 0; q < x->size(); ++q) {
    // breadth-first up the cover relation
    std::vector<int> seen{q};
    for (std::size_t i = 0; i < seen.size(); ++i)
      for (int p : direct_generalizations(*x, seen[i]))
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
    for (int p : all_generalizations(*x, q))
      CHECK(std::find(seen.begin(), seen.end(), p) != seen.end());
  }
}

TEST_CASE("connected components") {
  SpecSpace two({"m1", "m2"}, {});
  auto comps = connected_components(two, make_spcl(two, {0, 1}));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].members == std::vector<int>{0});
  CHECK(comps[1].members == std::vector<int>{1});

  auto b = boolean2();
  auto z = make_spcl(*b, {b->must_index("(x)"), b->must_index("(y)"),
                          b->must_index("(x,y)")});
  auto c2 = connected_components(*b, z);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0] == z);

  CHECK(connected_components(*b, SpclSubset{}).empty());
}

TEST_CASE("connected components partition Z") {
  auto b = boolean2();
  auto z = make_spcl(*b, {b->must_index("(x)"), b->must_index("(y)"),
                          b->must_index("(x,y)")});
  auto comps = connected_components(*b, z);
  SpclSubset un;
  int total = 0;
  for (const auto& c : comps) {
    un = spcl_union(un, c);
    total += c.size();
  }
  CHECK(un == z);
  CHECK(total == z.size());
}

TEST_CASE("generalization neighborhood") {
  auto x = chain3();
  auto nb = generalization_neighborhood(*x, x->must_index("b"));
  CHECK(nb.ids() == std::vector<std::string>{"a", "b"});
  CHECK(nb.specializes(nb.must_index("a"), nb.must_index("b")));

  auto b = boolean2();
  CHECK(generalization_neighborhood(*b, b->must_index("(0)")).size() == 1);
  CHECK(generalization_neighborhood(*b, b->must_index("(x,y)")).size() == 4);

  // idempotent
  auto nb2 = generalization_neighborhood(nb, nb.must_index("b"));
  CHECK(nb2 == nb);
}

TEST_CASE("validation rejects bad input") {
  CHECK_THROWS(SpecSpace({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
  CHECK_THROWS(SpecSpace({"a", "b"}, {{"a", "c"}}));
  auto x = chain2();
  CHECK_THROWS(make_spcl(*x, {x->must_index("eta")}));  // not closed downwards
  CHECK_THROWS(SpecSpace({"a", "b"}, {{"a", "b"}}, {},
                         {{"a", 1}, {"b", 1}}));  // heights not increasing
}

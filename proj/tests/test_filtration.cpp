#include <catch2/catch_amalgamated.hpp>

#include "tstruct/filtration.hpp"

using namespace tstruct;

namespace {

std::shared_ptr<SpecSpace> chain2() {
  return std::make_shared<SpecSpace>(
      std::vector<std::string>{"eta", "m"},
      std::vector<std::pair<std::string, std::string>>{{"eta", "m"}});
}

SpclSubset whole(const SpecSpace& x) {
  std::vector<int> all(x.size());
  for (int i = 0; i < x.size(); ++i) all[i] = i;
  return SpclSubset{all};
}

}  // namespace

TEST_CASE("standard filtration shape") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto phi = ThomasonFiltration::standard(x, z);
  CHECK(phi.at(0) == z);
  CHECK(phi.at(-5) == z);
  CHECK(phi.at(1).empty());
  CHECK(phi.at(7).empty());
  CHECK(phi.is_eventually_vanishing());
}

TEST_CASE("constant filtration") {
  auto x = chain2();
  auto phi = ThomasonFiltration::constant(x, SpclSubset{});
  CHECK(phi.at(-3).empty());
  CHECK(phi.at(3).empty());
  auto psi = ThomasonFiltration::constant(x, whole(*x));
  CHECK_FALSE(psi.is_eventually_vanishing());
}

TEST_CASE("tilting shape") {
  auto x = chain2();
  auto w = whole(*x);
  auto z = closure(*x, {x->must_index("m")});
  auto phi = ThomasonFiltration::tilting(x, w, z, 0, 2);
  CHECK(phi.at(-1) == w);
  CHECK(phi.at(0) == z);
  CHECK(phi.at(2) == z);
  CHECK(phi.at(3).empty());
  CHECK_THROWS(ThomasonFiltration::tilting(x, z, w, 0, 2));  // W must contain Z
  CHECK_THROWS(ThomasonFiltration::tilting(x, w, z, 2, 0));
}

TEST_CASE("shift") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto phi = ThomasonFiltration::standard(x, z);
  auto sh = phi.shift(1);
  CHECK(sh.at(-1) == z);
  CHECK(sh.at(0).empty());
  CHECK(sh.shift(-1) == phi);
  CHECK(phi.shift(0) == phi);
  auto c = ThomasonFiltration::constant(x, z);
  CHECK(c.shift(4) == c);
}

TEST_CASE("truncate_below") {
  auto x = chain2();
  auto w = whole(*x);
  auto z = closure(*x, {x->must_index("m")});
  auto phi = ThomasonFiltration::standard(x, z);
  CHECK(phi.truncate_below(0) == phi);
  CHECK(phi.truncate_below(1) == ThomasonFiltration::constant(x, SpclSubset{}));
  auto t = ThomasonFiltration::tilting(x, w, z, 0, 2).truncate_below(1);
  CHECK(t.at(-10) == z);
  CHECK(t.at(2) == z);
  CHECK(t.at(3).empty());
}

TEST_CASE("restrict") {
  auto x = chain2();
  int m = x->must_index("m");
  auto phi = ThomasonFiltration::standard(x, whole(*x));
  auto r = phi.restrict({m});
  CHECK(r.space().size() == 1);
  CHECK(r.at(0).size() == 1);
  CHECK(r.at(1).empty());

  auto none = phi.restrict({});
  CHECK(none.space().size() == 0);
  CHECK(none.at(0).empty());

  // restrict composes via intersection
  auto a = phi.restrict({m}).restrict({0});
  auto b = phi.restrict({m});
  CHECK(a == b);
}

TEST_CASE("localize realizes phi_p") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto phi = ThomasonFiltration::standard(x, z);
  auto at_m = phi.localize(x->must_index("m"));
  CHECK(at_m.space().size() == 2);
  auto at_eta = phi.localize(x->must_index("eta"));
  CHECK(at_eta.space().size() == 1);
  CHECK(at_eta.at(0).empty());  // m is gone, and Z contained only m
}

TEST_CASE("leq") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto st = ThomasonFiltration::standard(x, z);
  auto c = ThomasonFiltration::constant(x, z);
  CHECK(st.leq(c));
  CHECK_FALSE(c.leq(st));
  CHECK(st.leq(st));
  auto w = ThomasonFiltration::standard(x, whole(*x));
  CHECK(st.leq(w));
  // partial order: antisymmetry on a sample
  CHECK_FALSE(w.leq(st));
}

TEST_CASE("weak Cousin examples") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto w = whole(*x);

  CHECK(ThomasonFiltration::standard(x, w).is_weak_cousin_across(w));
  CHECK_FALSE(ThomasonFiltration::constant(x, z).is_weak_cousin_across(w));
  CHECK(ThomasonFiltration::constant(x, z).is_weak_cousin_across(z));
  CHECK(ThomasonFiltration::constant(x, w).is_weak_cousin_across(w));
  // vacuous across the empty set
  CHECK(ThomasonFiltration::constant(x, z).is_weak_cousin_across(SpclSubset{}));
}

TEST_CASE("weak Cousin agrees with the restricted absolute condition") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto w = whole(*x);
  for (const auto& phi :
       {ThomasonFiltration::standard(x, w), ThomasonFiltration::constant(x, z),
        ThomasonFiltration::standard(x, z),
        ThomasonFiltration::tilting(x, w, z, -1, 1)}) {
    for (const auto& zz : {z, w, SpclSubset{}}) {
      CHECK(phi.is_weak_cousin_across(zz) ==
            phi.restrict(zz.members).is_weak_cousin());
    }
  }
}

TEST_CASE("classification predicates") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto w = whole(*x);

  CHECK(restricts_to_bounded_coherent(ThomasonFiltration::standard(x, z), z));
  CHECK_FALSE(restricts_to_bounded_coherent(ThomasonFiltration::constant(x, z), w));
  CHECK(restricts_to_bounded_coherent(ThomasonFiltration::constant(x, z), SpclSubset{}));
}

TEST_CASE("restricts_to_perf splits over regularity") {
  // single non-regular closed point
  auto x = std::make_shared<SpecSpace>(
      std::vector<std::string>{"m"},
      std::vector<std::pair<std::string, std::string>>{},
      std::map<std::string, bool>{{"m", false}});
  auto z = make_spcl(*x, {0});
  CHECK_FALSE(restricts_to_perf(ThomasonFiltration::standard(x, z), z));
  CHECK(restricts_to_perf(ThomasonFiltration::constant(x, z), z));
  CHECK(restricts_to_perf(ThomasonFiltration::constant(x, SpclSubset{}), z));

  // regular chain: weak Cousin decides
  auto c = chain2();
  auto zc = whole(*c);
  CHECK(restricts_to_perf(ThomasonFiltration::standard(c, zc), zc));
  CHECK_FALSE(restricts_to_perf(
      ThomasonFiltration::constant(c, closure(*c, {c->must_index("m")})), zc));
}

TEST_CASE("canonical form merges equal steps") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  ThomasonFiltration phi(x, z, {{0, z}, {2, SpclSubset{}}});
  CHECK(phi.steps().size() == 1);
  CHECK(phi.steps()[0].at == 2);
  CHECK(phi == ThomasonFiltration(x, z, {{2, SpclSubset{}}}));
}

TEST_CASE("validation rejects bad filtrations") {
  auto x = chain2();
  auto z = closure(*x, {x->must_index("m")});
  auto w = whole(*x);
  // increasing values
  CHECK_THROWS(ThomasonFiltration(x, z, {{0, w}}));
  // value not specialization-closed
  CHECK_THROWS(ThomasonFiltration(
      x, w, {{0, SpclSubset{{x->must_index("eta")}}}}));
  // thresholds out of order
  CHECK_THROWS(ThomasonFiltration(x, w, {{2, z}, {0, SpclSubset{}}}));
}

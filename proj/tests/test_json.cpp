#include <catch2/catch_amalgamated.hpp>

#include "tstruct/json_io.hpp"

using namespace tstruct;

TEST_CASE("spectral space round trips through JSON") {
  GradedRing r = GradedRing::cross(Field{0});
  auto skel = skeleton(r);
  Json j = space_to_json(*skel);
  CHECK(j.at("schema") == kSchemaTag);
  SpecSpace back = space_from_json(j);
  CHECK(back == *skel);
  CHECK(back.has_heights());
  CHECK(back.height(back.must_index("(x,y)")) == 1);
  CHECK_FALSE(back.regular(back.must_index("(x,y)")));
}

TEST_CASE("space JSON without heights or regular marks uses defaults") {
  Json j = Json::parse(R"({"points":[{"id":"a"},{"id":"b"}],"covers":[["a","b"]]})");
  SpecSpace x = space_from_json(j);
  CHECK(x.size() == 2);
  CHECK(x.regular(0));
  CHECK_FALSE(x.has_heights());
  CHECK(x.specializes(x.must_index("a"), x.must_index("b")));
}

TEST_CASE("filtration round trips and folds a nontrivial high tail") {
  GradedRing r = GradedRing::poly(Field{0}, 2);
  auto skel = skeleton(r);
  SpclSubset vx = closure(*skel, {*skel->find("(x)")});
  ThomasonFiltration phi = ThomasonFiltration::standard(skel, vx);
  Json j = filtration_to_json(phi, "space.json");
  CHECK(j.at("space") == "space.json");
  CHECK(j.at("high_tail").empty());
  CHECK(filtration_from_json(j, skel) == phi);

  // three-field form where the high tail differs from the last step
  Json alt{{"low_tail", j.at("low_tail")},
           {"steps", Json::array()},
           {"high_tail", Json::array()}};
  ThomasonFiltration folded = filtration_from_json(alt, skel);
  CHECK(folded.at(0) == vx);
  CHECK(folded.at(1).empty());
}

TEST_CASE("ring descriptors round trip") {
  for (GradedRing r : {GradedRing::poly(Field{0}, 3), GradedRing::trunc(Field{7}, 2),
                       GradedRing::cross(Field{101})}) {
    CHECK(ring_from_json(ring_to_json(r)) == r);
  }
  CHECK(ring_from_json(Json{{"family", "cross"}}) == GradedRing::cross(Field{0}));
  CHECK_THROWS(ring_from_json(Json{{"field", "R"}, {"family", "cross"}}));
}

TEST_CASE("complexes round trip with differentials and localizations") {
  GradedRing r = GradedRing::poly(Field{0}, 2);
  for (const FreeComplex& e :
       {koszul_of_prime(r, 3u), cech(r, {1u, 2u}), tensor(cech(r, {1u}), koszul(r, {{0, 1}}))}) {
    FreeComplex back = complex_from_json(complex_to_json(e));
    CHECK(back.ring == r);
    CHECK(back.terms == e.terms);
    CHECK(same_cohomology(back, e));
  }
}

TEST_CASE("valid_above survives the JSON round trip") {
  GradedRing r = GradedRing::trunc(Field{0}, 2);
  FreeComplex k = std_truncate(koszul(r, {{1}}), 0, TruncSide::Ge, -6);
  REQUIRE(k.valid_above == -6);
  CHECK(complex_from_json(complex_to_json(k)).valid_above == -6);
}

TEST_CASE("malformed complex entries are rejected") {
  GradedRing r = GradedRing::poly(Field{0}, 1);
  Json j = complex_to_json(koszul(r, {{1}}));
  Json bad = j;
  bad["diffs"]["-1"][0][0]["mono"] = {2};
  CHECK_THROWS_WITH(complex_from_json(bad),
                    Catch::Matchers::ContainsSubstring("monomial disagrees"));
  bad = j;
  bad["diffs"]["-1"][0][0] = 5;
  CHECK_THROWS(complex_from_json(bad));
  bad = j;
  bad["terms"]["0"][0]["twist"] = {1, 2};
  CHECK_THROWS(complex_from_json(bad));
  bad = j;
  bad["schema"] = "tstruct/99";
  CHECK_THROWS(complex_from_json(bad));
}

TEST_CASE("cohomology and triangle reports serialize") {
  GradedRing r = GradedRing::poly(Field{0}, 1);
  Json rep = cohomology_report_to_json(r, cohomology(koszul(r, {{1}})));
  CHECK(rep.at("schema") == kSchemaTag);
  CHECK(rep.at("h").contains("0"));
  CHECK(rep.at("h").at("0").at("fg") == "FINITE");
  CHECK(rep.at("h").at("0").at("support") == Json::array({"(x)"}));

  auto skel = skeleton(r);
  ThomasonFiltration st =
      ThomasonFiltration::standard(skel, closure(*skel, {*skel->find("(x)")}));
  TruncationTriangle t = tau(st, koszul(r, {{1}}), -4);
  Json tj = triangle_to_json(t);
  CHECK(tj.at("aisle_ok") == true);
  CHECK(tj.at("coaisle_ok") == true);
  FreeComplex a_back = complex_from_json(tj.at("a").at("complex"));
  CHECK(same_cohomology(a_back, t.a, t.a.valid_above));
}

TEST_CASE("serialization is byte-stable across repeated runs") {
  GradedRing r = GradedRing::cross(Field{0});
  FreeComplex e = koszul_of_prime(r, 3u);
  CHECK(complex_to_json(e).dump() == complex_to_json(e).dump());
  CHECK(space_to_json(*skeleton(r)).dump() == space_to_json(*skeleton(r)).dump());
}

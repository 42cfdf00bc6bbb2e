#pragma once

#include <json.hpp>

#include "tstruct/cohomology.hpp"
#include "tstruct/filtration.hpp"
#include "tstruct/truncation.hpp"

namespace tstruct {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "tstruct/1";

inline void require_schema(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kSchemaTag)
    throw std::invalid_argument("unsupported schema tag: " +
                                j.at("schema").dump());
}

// ---------------------------------------------------------------- spaces

inline Json space_to_json(const SpecSpace& x) {
  Json points = Json::array();
  for (int i = 0; i < x.size(); ++i) {
    Json p{{"id", x.id(i)}, {"regular", x.regular(i)}};
    if (x.has_heights()) p["height"] = x.height(i);
    points.push_back(std::move(p));
  }
  Json covers = Json::array();
  for (int p = 0; p < x.size(); ++p)
    for (int q : x.covers_down(p)) covers.push_back(Json::array({x.id(p), x.id(q)}));
  return Json{{"schema", kSchemaTag}, {"points", points}, {"covers", covers}};
}

inline SpecSpace space_from_json(const Json& j) {
  require_schema(j);
  std::vector<std::string> ids;
  std::map<std::string, bool> regular;
  std::map<std::string, int> heights;
  bool any_height = false, all_height = true;
  for (const auto& p : j.at("points")) {
    std::string id = p.at("id").get<std::string>();
    ids.push_back(id);
    regular[id] = p.value("regular", true);
    if (p.contains("height")) {
      heights[id] = p.at("height").get<int>();
      any_height = true;
    } else {
      all_height = false;
    }
  }
  if (any_height && !all_height)
    throw std::invalid_argument("points must carry heights all or none");
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2)
      throw std::invalid_argument("cover entries must be [p, q] pairs");
    covers.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>()});
  }
  return SpecSpace(std::move(ids), covers, std::move(regular),
                   any_height ? std::move(heights) : std::map<std::string, int>{});
}

// ------------------------------------------------------------ filtrations

inline Json subset_to_json(const SpecSpace& x, const SpclSubset& s) {
  Json out = Json::array();
  for (int p : s.members) out.push_back(x.id(p));
  return out;
}

inline SpclSubset subset_from_json(const SpecSpace& x, const Json& j) {
  std::vector<int> m;
  for (const auto& id : j) m.push_back(x.must_index(id.get<std::string>()));
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return make_spcl(x, std::move(m));
}

/// `space_ref` is recorded verbatim (typically the file the space came
/// from); the space itself travels separately.
inline Json filtration_to_json(const ThomasonFiltration& phi,
                               const std::string& space_ref = "") {
  const SpecSpace& x = phi.space();
  Json steps = Json::array();
  for (const auto& s : phi.steps())
    steps.push_back(Json{{"at", s.at}, {"value", subset_to_json(x, s.value)}});
  Json out{{"schema", kSchemaTag}};
  if (!space_ref.empty()) out["space"] = space_ref;
  out["low_tail"] = subset_to_json(x, phi.low_tail());
  out["steps"] = std::move(steps);
  out["high_tail"] = subset_to_json(x, phi.high_tail());
  return out;
}

/// Accepts the three-field exchange form. A high_tail differing from the
/// last step's value is folded in as one further step directly after the
/// last breakpoint.
inline ThomasonFiltration filtration_from_json(
    const Json& j, std::shared_ptr<const SpecSpace> space) {
  require_schema(j);
  SpclSubset low = subset_from_json(*space, j.at("low_tail"));
  std::vector<ThomasonFiltration::Step> steps;
  for (const auto& s : j.at("steps"))
    steps.push_back({s.at("at").get<int>(), subset_from_json(*space, s.at("value"))});
  if (j.contains("high_tail")) {
    SpclSubset ht = subset_from_json(*space, j.at("high_tail"));
    const SpclSubset& last = steps.empty() ? low : steps.back().value;
    if (!(ht == last))
      steps.push_back({steps.empty() ? 1 : steps.back().at + 1, std::move(ht)});
  }
  return ThomasonFiltration(std::move(space), std::move(low), std::move(steps));
}

// ----------------------------------------------------------------- rings

inline Json ring_to_json(const GradedRing& r) {
  Json field = r.field.p == 0 ? Json("Q") : Json{{"fp", r.field.p}};
  Json family;
  switch (r.family) {
    case Family::Poly: family = Json{{"poly", r.param}}; break;
    case Family::Trunc: family = Json{{"trunc", r.param}}; break;
    case Family::Cross: family = Json("cross"); break;
  }
  return Json{{"field", std::move(field)}, {"family", std::move(family)}};
}

inline GradedRing ring_from_json(const Json& j) {
  Field k{0};
  if (j.contains("field")) {
    const Json& f = j.at("field");
    if (f.is_string()) {
      if (f.get<std::string>() != "Q")
        throw std::invalid_argument("unknown field: " + f.get<std::string>());
    } else {
      k.p = f.at("fp").get<std::int64_t>();
      if (k.p < 2) throw std::invalid_argument("fp characteristic must be >= 2");
    }
  }
  const Json& fam = j.at("family");
  if (fam.is_string()) {
    if (fam.get<std::string>() == "cross") return GradedRing::cross(k);
    throw std::invalid_argument("unknown ring family: " + fam.get<std::string>());
  }
  if (fam.contains("poly")) return GradedRing::poly(k, fam.at("poly").get<int>());
  if (fam.contains("trunc")) return GradedRing::trunc(k, fam.at("trunc").get<int>());
  throw std::invalid_argument("unknown ring family: " + fam.dump());
}

// ------------------------------------------------------------- complexes

inline Json inverted_to_json(const GradedRing& r, unsigned inv) {
  Json out = Json::array();
  for (int v = 0; v < r.nvars(); ++v)
    if (inv >> v & 1) out.push_back(r.var_name(v));
  return out;
}

inline unsigned inverted_from_json(const GradedRing& r, const Json& j) {
  unsigned inv = 0;
  for (const auto& name : j) {
    bool found = false;
    for (int v = 0; v < r.nvars(); ++v)
      if (name.get<std::string>() == r.var_name(v)) {
        inv |= 1u << v;
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument("unknown variable: " + name.get<std::string>());
  }
  return inv;
}

inline Json complex_to_json(const FreeComplex& e) {
  const GradedRing& r = e.ring;
  Json terms = Json::object();
  for (const auto& [i, t] : e.terms) {
    Json arr = Json::array();
    for (const auto& s : t.summands)
      arr.push_back(Json{{"twist", s.twist},
                         {"inverted", inverted_to_json(r, s.inverted)}});
    terms[std::to_string(i)] = std::move(arr);
  }
  Json diffs = Json::object();
  for (const auto& [i, m] : e.diffs) {
    const GradedTerm& src = e.term(i);
    const GradedTerm& tgt = e.term(i + 1);
    Json rows = Json::array();
    for (int y = 0; y < tgt.size(); ++y) {
      Json row = Json::array();
      for (int x = 0; x < src.size(); ++x) {
        if (r.field.is_zero(m.c[y][x])) {
          row.push_back(0);
        } else {
          row.push_back(Json{
              {"c", to_string(r.field.normalize(m.c[y][x]))},
              {"mono", deg_sub(src.summands[x].twist, tgt.summands[y].twist)}});
        }
      }
      rows.push_back(std::move(row));
    }
    diffs[std::to_string(i)] = std::move(rows);
  }
  Json out{{"schema", kSchemaTag}, {"ring", ring_to_json(r)},
           {"terms", std::move(terms)}, {"diffs", std::move(diffs)}};
  if (e.valid_above != kNegInfDeg) out["valid_above"] = e.valid_above;
  return out;
}

/// Differential rows are indexed by the summands one degree up, columns by
/// the source degree; each nonzero entry carries its coefficient as a
/// string and (redundantly, for checking) the monomial exponent forced by
/// the two twists.
inline FreeComplex complex_from_json(const Json& j, const GradedRing& ring) {
  require_schema(j);
  const GradedRing& r = ring;
  if (j.contains("ring") && !(ring_from_json(j.at("ring")) == r))
    throw std::invalid_argument("complex carries a different ring descriptor");
  std::map<int, GradedTerm> terms;
  for (const auto& [key, arr] : j.at("terms").items()) {
    GradedTerm t;
    for (const auto& s : arr) {
      Summand sm;
      sm.twist = s.at("twist").get<Degree>();
      if (static_cast<int>(sm.twist.size()) != r.nvars())
        throw std::invalid_argument("twist arity does not match the ring");
      sm.inverted = inverted_from_json(r, s.at("inverted"));
      t.summands.push_back(std::move(sm));
    }
    terms[std::stoi(key)] = std::move(t);
  }
  std::map<int, GradedMatrix> diffs;
  for (const auto& [key, rows] : j.at("diffs").items()) {
    int i = std::stoi(key);
    auto src_it = terms.find(i), tgt_it = terms.find(i + 1);
    if (src_it == terms.end() || tgt_it == terms.end())
      throw std::invalid_argument("differential at " + key +
                                  " without both adjacent terms");
    const GradedTerm& src = src_it->second;
    const GradedTerm& tgt = tgt_it->second;
    GradedMatrix m = zero_matrix(tgt, src);
    if (static_cast<int>(rows.size()) != tgt.size())
      throw std::invalid_argument("differential at " + key + ": wrong row count");
    for (int y = 0; y < tgt.size(); ++y) {
      const Json& row = rows.at(y);
      if (static_cast<int>(row.size()) != src.size())
        throw std::invalid_argument("differential at " + key + ": wrong column count");
      for (int x = 0; x < src.size(); ++x) {
        const Json& ent = row.at(x);
        if (ent.is_null()) continue;
        if (ent.is_number()) {
          if (ent.get<double>() != 0)
            throw std::invalid_argument("differential at " + key +
                                        ": bare nonzero entry, use {c, mono}");
          continue;
        }
        m.c[y][x] = rational_from_string(ent.at("c").get<std::string>());
        if (ent.contains("mono") &&
            ent.at("mono").get<Degree>() !=
                deg_sub(src.summands[x].twist, tgt.summands[y].twist))
          throw std::invalid_argument(
              "differential at " + key + ": monomial disagrees with the twists");
      }
    }
    diffs[i] = std::move(m);
  }
  FreeComplex e = make_complex(r, std::move(terms), std::move(diffs));
  if (j.contains("valid_above")) e.valid_above = j.at("valid_above").get<int>();
  return e;
}

inline FreeComplex complex_from_json(const Json& j) {
  return complex_from_json(j, ring_from_json(j.at("ring")));
}

// --------------------------------------------------------------- reports

inline Json box_to_json(const DegreeBox& b) {
  if (b.empty) return nullptr;
  return Json{{"lo", b.lo}, {"hi", b.hi}};
}

inline Json cohomology_report_to_json(const GradedRing& r,
                                      const CohomologyReport& rep) {
  auto skel = skeleton(r);
  Json h = Json::object();
  for (const auto& [i, pd] : rep.h) {
    Json dims = Json::array();
    for (const auto& [d, n] : pd.dims)
      dims.push_back(Json{{"degree", d}, {"dim", n}});
    h[std::to_string(i)] = Json{{"nonzero", pd.nonzero},
                                {"fg", to_string(pd.fg)},
                                {"support", subset_to_json(*skel, pd.support)},
                                {"dims", std::move(dims)}};
  }
  Json out{{"schema", kSchemaTag}, {"window", box_to_json(rep.window)}};
  if (rep.valid_above != kNegInfDeg) out["valid_above"] = rep.valid_above;
  out["h"] = std::move(h);
  return out;
}

inline Json triangle_to_json(const TruncationTriangle& t,
                             const DegreeBox* window = nullptr) {
  const GradedRing& r = t.e.ring;
  auto part = [&](const FreeComplex& e) {
    return Json{{"complex", complex_to_json(e)},
                {"cohomology", cohomology_report_to_json(r, cohomology(e, window))}};
  };
  return Json{{"schema", kSchemaTag},
              {"aisle_ok", t.aisle_ok},
              {"coaisle_ok", t.coaisle_ok},
              {"a", part(t.a)},
              {"b", part(t.b)},
              {"e_cohomology",
               cohomology_report_to_json(r, cohomology(t.e, window))}};
}

}  // namespace tstruct

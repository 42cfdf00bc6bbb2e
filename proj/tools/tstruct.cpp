// tstruct: command-line front end for the filtration / t-structure toolkit.
//
// Verbs: poset, filtration classify, truncate, cohomology, classify, verify.
// JSON in, JSON out (or a human table with --pretty); every run echoes a
// reproducibility header with the tool version, seed, and input digests.
// Exit codes: 0 success/PASS, 1 FAIL, 2 usage or malformed input,
// 3 UNKNOWN/INCONCLUSIVE.

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "tstruct/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using tstruct::Json;

struct RunContext {
  std::uint64_t seed = 7;
  std::map<std::string, std::string> digests;  // path -> fnv1a-64 hex
  std::string out_path;
  bool pretty = false;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Json load_json(const std::string& path, RunContext& ctx) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  ctx.digests[path] = fnv1a64(bytes);
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    // e.what() carries the byte position of the syntax error
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Json meta_json(const RunContext& ctx) {
  Json inputs = Json::object();
  for (const auto& [path, digest] : ctx.digests) inputs[path] = digest;
  return Json{{"version", kVersion}, {"seed", ctx.seed}, {"inputs", inputs}};
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

tstruct::SpclSubset whole_of(const tstruct::SpecSpace& x) {
  std::vector<int> m(x.size());
  std::iota(m.begin(), m.end(), 0);
  return tstruct::SpclSubset{std::move(m)};
}

tstruct::SpclSubset subset_of_ids(const tstruct::SpecSpace& x,
                                  const std::string& csv) {
  std::vector<int> m;
  for (const auto& id : split_ids(csv)) m.push_back(x.must_index(id));
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return tstruct::make_spcl(x, std::move(m));
}

tstruct::DegreeBox window_box(const std::string& spec, int nvars) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--window expects lo:hi, got " + spec);
  int lo = std::stoi(spec.substr(0, colon));
  int hi = std::stoi(spec.substr(colon + 1));
  if (lo > hi) throw CLI::ValidationError("--window lo exceeds hi");
  tstruct::DegreeBox box;
  box.empty = false;
  box.lo.assign(nvars, lo);
  box.hi.assign(nvars, hi);
  return box;
}

// --------------------------------------------------------- pretty tables

std::string degree_str(const tstruct::Degree& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d[i]);
  }
  return out + ")";
}

void print_cohomology_table(std::ostream& os, const std::string& label,
                            const Json& rep) {
  os << label << ":\n";
  if (rep.at("h").empty()) {
    os << "  (zero in every reported degree)\n";
    return;
  }
  for (const auto& [deg, pd] : rep.at("h").items()) {
    os << "  H^" << deg << ": fg=" << pd.at("fg").get<std::string>()
       << " support=[";
    bool first = true;
    for (const auto& p : pd.at("support")) {
      if (!first) os << " ";
      os << p.get<std::string>();
      first = false;
    }
    os << "]";
    const auto& dims = pd.at("dims");
    if (!dims.empty()) {
      os << " dims:";
      int shown = 0;
      for (const auto& e : dims) {
        if (shown++ == 8) {
          os << " ... (" << dims.size() << " total)";
          break;
        }
        os << " " << degree_str(e.at("degree").get<tstruct::Degree>()) << "->"
           << e.at("dim").get<int>();
      }
    }
    os << "\n";
  }
}

void pretty_meta(std::ostream& os, const Json& report) {
  const Json& m = report.at("meta");
  os << "tstruct " << m.at("version").get<std::string>() << "  seed="
     << m.at("seed").get<std::uint64_t>() << "\n";
  for (const auto& [path, digest] : m.at("inputs").items())
    os << "  input " << path << "  fnv1a64=" << digest.get<std::string>()
       << "\n";
}

// -------------------------------------------------------------- emission

/// Scan a report for verdicts that demand a non-zero exit code.
int exit_code_for(const Json& j) {
  bool unknown = false;
  std::function<void(const Json&)> walk = [&](const Json& n) {
    if (n.is_object()) {
      for (const auto& [k, v] : n.items()) walk(v);
    } else if (n.is_array()) {
      for (const auto& v : n) walk(v);
    } else if (n.is_string()) {
      const std::string& s = n.get_ref<const std::string&>();
      if (s == "UNKNOWN" || s == "INCONCLUSIVE") unknown = true;
    }
  };
  if (j.contains("status")) {
    std::string s = j.at("status").get<std::string>();
    if (s == "FAIL") return 1;
    if (s == "INCONCLUSIVE") return 3;
    return 0;
  }
  walk(j);
  return unknown ? 3 : 0;
}

int emit(const RunContext& ctx, Json report,
         const std::function<void(std::ostream&, const Json&)>& table) {
  report["meta"] = meta_json(ctx);
  if (!ctx.out_path.empty()) {
    std::ofstream out(ctx.out_path);
    if (!out) throw CLI::ValidationError("cannot write " + ctx.out_path);
    out << report.dump(2) << "\n";
  }
  if (ctx.pretty) {
    pretty_meta(std::cout, report);
    table(std::cout, report);
  } else if (ctx.out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  }
  return exit_code_for(report);
}

Json classify_json(const tstruct::ThomasonFiltration& phi,
                   const tstruct::SpclSubset& z) {
  const tstruct::SpecSpace& x = phi.space();
  return Json{{"schema", tstruct::kSchemaTag},
              {"z", tstruct::subset_to_json(x, z)},
              {"weak_cousin", phi.is_weak_cousin()},
              {"weak_cousin_on_z", phi.is_weak_cousin_across(z)},
              {"restricts_db_coh", tstruct::restricts_to_bounded_coherent(phi, z)},
              {"restricts_perf", tstruct::restricts_to_perf(phi, z)}};
}

void classify_table(std::ostream& os, const Json& j) {
  os << "z: " << j.at("z").dump() << "\n";
  for (const char* key : {"weak_cousin", "weak_cousin_on_z",
                          "restricts_db_coh", "restricts_perf"})
    os << "  " << key << ": " << (j.at(key).get<bool>() ? "yes" : "no") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filtration / t-structure toolkit"};
  app.require_subcommand(1);
  RunContext ctx;
  app.add_option("--seed", ctx.seed, "random seed echoed in reports");
  app.add_option("--out", ctx.out_path, "write the JSON report to this file");
  app.add_flag("--pretty", ctx.pretty, "print a human-readable table");

  std::string space_path, filt_path, ring_path, complex_path;
  std::string z_csv, window_spec, suite = "all";
  int depth_override = tstruct::kNegInfDeg;

  CLI::App* poset = app.add_subcommand("poset", "validate and echo a finite spectral poset");
  poset->add_option("--space", space_path, "poset JSON file")->required();
  poset->add_option("--z", z_csv, "comma-separated point ids; closure is reported");

  CLI::App* filtration = app.add_subcommand("filtration", "filtration operations");
  CLI::App* fclassify = filtration->add_subcommand(
      "classify", "restriction predicates of a filtration on a finite space");
  fclassify->add_option("--space", space_path, "poset JSON file")->required();
  fclassify->add_option("--filtration", filt_path, "filtration JSON file")->required();
  fclassify->add_option("--z", z_csv, "comma-separated point ids (default: whole space)");
  filtration->require_subcommand(1);

  CLI::App* truncate = app.add_subcommand("truncate", "truncation triangle for a filtration t-structure");
  truncate->add_option("--ring", ring_path, "ring descriptor JSON")->required();
  truncate->add_option("--complex", complex_path, "complex JSON")->required();
  truncate->add_option("--filtration", filt_path, "filtration JSON on the ring skeleton")->required();
  truncate->add_option("--window", window_spec, "internal-degree window lo:hi for the reports")->required();
  truncate->add_option("--depth", depth_override, "construction cutoff (default: below the complex)");

  CLI::App* cohomology = app.add_subcommand("cohomology", "exact cohomology report of a complex");
  cohomology->add_option("--ring", ring_path, "ring descriptor JSON")->required();
  cohomology->add_option("--complex", complex_path, "complex JSON")->required();
  cohomology->add_option("--window", window_spec, "internal-degree window lo:hi");

  CLI::App* classify = app.add_subcommand("classify", "restriction predicates on a ring skeleton");
  classify->add_option("--ring", ring_path, "ring descriptor JSON")->required();
  classify->add_option("--filtration", filt_path, "filtration JSON on the ring skeleton")->required();
  classify->add_option("--z", z_csv, "comma-separated skeleton ids (default: whole skeleton)");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite,
                     "all, poset, truncation, a2, nonregular, or classification");

  // let --seed/--out/--pretty appear after the verb as well
  for (CLI::App* s : {poset, filtration, fclassify, truncate, cohomology,
                      classify, verify})
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (poset->parsed()) {
      auto x = std::make_shared<tstruct::SpecSpace>(
          tstruct::space_from_json(load_json(space_path, ctx)));
      Json rep{{"schema", tstruct::kSchemaTag},
               {"space", tstruct::space_to_json(*x)}};
      if (!z_csv.empty()) {
        tstruct::SpclSubset z = subset_of_ids(*x, z_csv);
        rep["z"] = tstruct::subset_to_json(*x, z);
        rep["closure"] = tstruct::subset_to_json(
            *x, tstruct::closure(*x, z.members));
        rep["specialization_closed"] =
            tstruct::is_specialization_closed(*x, z.members);
      }
      return emit(ctx, std::move(rep), [](std::ostream& os, const Json& j) {
        const Json& sp = j.at("space");
        os << "points:";
        for (const auto& p : sp.at("points")) {
          os << " " << p.at("id").get<std::string>();
          if (!p.at("regular").get<bool>()) os << "(non-regular)";
        }
        os << "\ncovers:";
        for (const auto& c : sp.at("covers"))
          os << " " << c.at(0).get<std::string>() << ">"
             << c.at(1).get<std::string>();
        os << "\n";
        if (j.contains("closure"))
          os << "closure(z): " << j.at("closure").dump() << "  spcl: "
             << (j.at("specialization_closed").get<bool>() ? "yes" : "no")
             << "\n";
      });
    }

    if (fclassify->parsed()) {
      auto x = std::make_shared<tstruct::SpecSpace>(
          tstruct::space_from_json(load_json(space_path, ctx)));
      tstruct::ThomasonFiltration phi =
          tstruct::filtration_from_json(load_json(filt_path, ctx), x);
      tstruct::SpclSubset z =
          z_csv.empty() ? whole_of(*x) : subset_of_ids(*x, z_csv);
      return emit(ctx, classify_json(phi, z),
                  [](std::ostream& os, const Json& j) { classify_table(os, j); });
    }

    if (classify->parsed()) {
      tstruct::GradedRing r =
          tstruct::ring_from_json(load_json(ring_path, ctx));
      auto skel = tstruct::skeleton(r);
      tstruct::ThomasonFiltration phi =
          tstruct::filtration_from_json(load_json(filt_path, ctx), skel);
      tstruct::SpclSubset z = z_csv.empty() ? whole_of(*skel)
                                            : subset_of_ids(*skel, z_csv);
      Json rep = classify_json(phi, z);
      rep["ring"] = tstruct::ring_to_json(r);
      return emit(ctx, std::move(rep),
                  [](std::ostream& os, const Json& j) { classify_table(os, j); });
    }

    if (truncate->parsed()) {
      tstruct::GradedRing r =
          tstruct::ring_from_json(load_json(ring_path, ctx));
      tstruct::FreeComplex e =
          tstruct::complex_from_json(load_json(complex_path, ctx), r);
      auto skel = tstruct::skeleton(r);
      tstruct::ThomasonFiltration phi =
          tstruct::filtration_from_json(load_json(filt_path, ctx), skel);
      tstruct::DegreeBox window = window_box(window_spec, r.nvars());
      int depth = depth_override != tstruct::kNegInfDeg
                      ? depth_override
                      : (e.zero() ? 0 : e.bottom()) - 6;
      tstruct::TruncationTriangle t = tstruct::tau(phi, e, depth);
      Json rep = tstruct::triangle_to_json(t, &window);
      return emit(ctx, std::move(rep), [](std::ostream& os, const Json& j) {
        os << "aisle_ok: " << (j.at("aisle_ok").get<bool>() ? "yes" : "no")
           << "  coaisle_ok: "
           << (j.at("coaisle_ok").get<bool>() ? "yes" : "no") << "\n";
        print_cohomology_table(os, "A (aisle part)",
                               j.at("a").at("cohomology"));
        print_cohomology_table(os, "B (co-aisle part)",
                               j.at("b").at("cohomology"));
        print_cohomology_table(os, "E", j.at("e_cohomology"));
      });
    }

    if (cohomology->parsed()) {
      tstruct::GradedRing r =
          tstruct::ring_from_json(load_json(ring_path, ctx));
      tstruct::FreeComplex e =
          tstruct::complex_from_json(load_json(complex_path, ctx), r);
      Json rep;
      if (window_spec.empty()) {
        rep = tstruct::cohomology_report_to_json(r, tstruct::cohomology(e));
      } else {
        tstruct::DegreeBox window = window_box(window_spec, r.nvars());
        rep = tstruct::cohomology_report_to_json(r,
                                                 tstruct::cohomology(e, &window));
      }
      return emit(ctx, std::move(rep), [](std::ostream& os, const Json& j) {
        print_cohomology_table(os, "cohomology", j);
      });
    }

    if (verify->parsed()) {
      std::vector<tstruct::SuiteReport> reps =
          tstruct::run_suites(suite, ctx.seed);
      Json suites = Json::array();
      std::string overall = "PASS";
      for (const auto& r : reps) {
        suites.push_back(tstruct::suite_report_to_json(r));
        if (r.status() == tstruct::SuiteReport::Status::FAIL)
          overall = "FAIL";
        else if (overall == "PASS" &&
                 r.status() == tstruct::SuiteReport::Status::INCONCLUSIVE)
          overall = "INCONCLUSIVE";
      }
      Json rep{{"schema", tstruct::kSchemaTag},
               {"status", overall},
               {"suites", std::move(suites)}};
      return emit(ctx, std::move(rep), [](std::ostream& os, const Json& j) {
        os << "overall: " << j.at("status").get<std::string>() << "\n";
        for (const auto& s : j.at("suites")) {
          os << "  " << s.at("suite").get<std::string>() << ": "
             << s.at("status").get<std::string>() << "  cases="
             << s.at("cases").get<int>() << " skips="
             << s.at("skips").get<int>() << " inconclusive="
             << s.at("inconclusive").get<int>() << "\n";
          for (const auto& f : s.at("failures"))
            os << "    failure: " << f.get<std::string>() << "\n";
          for (const auto& n : s.at("notes"))
            os << "    note: " << n.get<std::string>() << "\n";
        }
      });
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

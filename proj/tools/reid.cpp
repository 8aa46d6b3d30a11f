// reid: twisted conjugacy and Reidemeister classes from the command line.
//
// Exit codes:
//   0  computed (whatever the mathematical answer)
//   1  verify found a mismatch
//   2  invalid input: bad arguments, syntax errors, unknown names, verify on an infinite group
//   3  infinite coincidence group
//   4  enumeration cap exceeded
//   5  I/O error
//   6  problem file failed validation

#include "reid/errors.hpp"
#include "reid/oracle.hpp"
#include "reid/problem_file.hpp"
#include "reid/twisted.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <string>

namespace {

using Json = nlohmann::ordered_json;
using namespace reid;

enum Exit { ok = 0, mismatch = 1, invalid = 2, coincidence = 3, cap = 4, io = 5, validation = 6 };

struct Options {
  std::string file;
  std::string phi = "id";
  std::string psi = "id";
  std::string g1, g2;
  bool json = false;
  bool skip_hom_check = false;
  std::string max_enum;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json word_json(const PcpPresentation& g, const PcpElement& x) {
  Json w = Json::array();
  for (const auto& s : g.to_word(x)) {
    Json e = s.exponent.fits_slong_p() ? Json(s.exponent.get_si()) : Json(s.exponent.get_str());
    w.push_back(Json::array({s.generator + 1, e}));
  }
  return w;
}

GroupMorphism morphism(const ProblemFile& problem, const std::string& name) {
  if (const GroupMorphism* f = problem.endomorphism(name)) return *f;
  if (name == "id") return GroupMorphism::identity(problem.group);
  throw UsageError("no endomorphism named \"" + name + "\"");
}

PcpElement element(const ProblemFile& problem, const std::string& arg) {
  if (const PcpElement* x = problem.element(arg)) return *x;
  if (!arg.empty() && arg.front() == '[') return parse_element_word(*problem.group, arg);
  throw UsageError("no element named \"" + arg + "\" (give a name from the file or a word like [[1,2],[3,-1]])");
}

SolverOptions solver_options(const Options& o) {
  SolverOptions s;
  if (!o.max_enum.empty()) {
    Integer cap;
    if (cap.set_str(o.max_enum, 10) != 0 || cap < 1) throw UsageError("--max-enum expects a positive integer");
    s.max_enumeration = cap;
  }
  return s;
}

int cmd_conj(const Options& o, const ProblemFile& problem) {
  const PcpPresentation& g = *problem.group;
  const EndoPair pair(morphism(problem, o.phi), morphism(problem, o.psi));
  const PcpElement g1 = element(problem, o.g1);
  const PcpElement g2 = element(problem, o.g2);
  TwistedSolver solver(solver_options(o));
  const TwistedResult r = solver.rep_twist_conj(pair, g1, g2);
  if (o.json) {
    Json out{{"command", "conj"}, {"status", r ? "conjugate" : "not-conjugate"}};
    if (r) {
      out["witness"] = word_json(g, r.witness());
      out["witness_text"] = g.format(r.witness());
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (r ? g.format(r.witness()) : "not-conjugate") << "\n";
  }
  return ok;
}

int cmd_classes(const Options& o, const ProblemFile& problem, bool count_only) {
  const PcpPresentation& g = *problem.group;
  const EndoPair pair(morphism(problem, o.phi), morphism(problem, o.psi));
  TwistedSolver solver(solver_options(o));
  const ReidemeisterResult r = solver.reps_reid_classes(pair);
  if (o.json) {
    Json out{{"command", count_only ? "number" : "classes"}, {"status", r.is_finite() ? "finite" : "infinite"}};
    if (r.is_finite()) {
      out["number"] = r.representatives().size();
      if (!count_only) {
        Json reps = Json::array();
        for (const auto& x : r.representatives()) reps.push_back(Json{{"word", word_json(g, x)}, {"text", g.format(x)}});
        out["representatives"] = reps;
      }
    }
    std::cout << out.dump() << "\n";
  } else if (!r.is_finite()) {
    std::cout << (count_only ? "infinity" : "infinite") << "\n";
  } else if (count_only) {
    std::cout << r.representatives().size() << "\n";
  } else {
    for (const auto& x : r.representatives()) std::cout << g.format(x) << "\n";
  }
  return ok;
}

int cmd_verify(const Options& o, const ProblemFile& problem, bool pair_given) {
  if (!problem.group->is_finite()) throw UsageError("verify needs a finite group; this presentation is infinite");
  const FiniteGroupTable table(problem.group);
  TwistedSolver solver(solver_options(o));
  std::mt19937_64 rng(o.seed);

  std::vector<std::pair<std::string, EndoPair>> pairs;
  if (pair_given) {
    pairs.emplace_back(o.phi + "," + o.psi, EndoPair(morphism(problem, o.phi), morphism(problem, o.psi)));
  } else {
    std::vector<std::pair<std::string, GroupMorphism>> maps{{"id", GroupMorphism::identity(problem.group)}};
    for (const auto& [name, f] : problem.endomorphisms)
      if (name != "id") maps.emplace_back(name, f);
    for (const auto& [a, f] : maps)
      for (const auto& [b, h] : maps) pairs.emplace_back(a + "," + b, EndoPair(f, h));
    for (std::size_t t = 0; t < o.trials; ++t) {
      auto f = random_endomorphism(table, rng);
      auto h = random_endomorphism(table, rng);
      if (f && h) pairs.emplace_back("random" + std::to_string(t + 1), EndoPair(*f, *h));
    }
  }

  Json records = Json::array();
  bool all_ok = true;
  for (const auto& [name, pair] : pairs) {
    const CompareReport rep = compare(pair, table, solver, rng);
    all_ok = all_ok && rep.ok();
    if (o.json) {
      Json rec{{"pair", name}, {"status", rep.ok() ? "pass" : "fail"}, {"classes", rep.brute_count},
               {"queries", rep.queries}, {"witnesses", rep.witnesses_checked}, {"mismatches", rep.mismatches}};
      records.push_back(rec);
    } else {
      std::cout << (rep.ok() ? "pass " : "FAIL ") << name << ": " << rep.brute_count << " classes, " << rep.queries
                << " queries\n";
      for (const auto& m : rep.mismatches) std::cout << "  " << m << "\n";
    }
  }
  if (o.json)
    std::cout << Json{{"command", "verify"}, {"status", all_ok ? "pass" : "fail"}, {"pairs", records}}.dump() << "\n";
  return all_ok ? ok : mismatch;
}

int cmd_check(const Options& o, const ProblemFile& problem) {
  const PcpPresentation& g = *problem.group;
  const std::size_t dl = derived_length(problem.group);
  if (o.json) {
    Json out{{"command", "check"}, {"status", "valid"}, {"generators", g.size()}, {"derived_length", dl}};
    out["order"] = g.is_finite() ? Json(g.order().get_str()) : Json("infinite");
    Json names = Json::array();
    for (const auto& [name, f] : problem.endomorphisms) names.push_back(name);
    out["endomorphisms"] = names;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "valid: " << g.size() << " generators, derived length " << dl << ", order "
              << (g.is_finite() ? g.order().get_str() : "infinite") << ", " << problem.endomorphisms.size()
              << " endomorphisms\n";
  }
  return ok;
}

int report(const Options& o, int code, const std::string& kind, const std::string& message) {
  std::cerr << "reid: " << message << "\n";
  if (o.json) std::cout << Json{{"status", "error"}, {"kind", kind}, {"message", message}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted conjugacy and Reidemeister classes in polycyclic groups"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_flag("--skip-hom-check", o.skip_hom_check, "Trust endomorphisms without verifying them");
  app.add_option("--max-enum", o.max_enum, "Cap on the size of any finite enumeration");

  auto with_pair = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Problem file")->required();
    sub->add_option("--phi", o.phi, "Endomorphism name (default: id)");
    sub->add_option("--psi", o.psi, "Endomorphism name (default: id)");
    sub->fallthrough();
    return sub;
  };
  CLI::App* conj = with_pair(app.add_subcommand("conj", "Decide whether g1 = psi(h) g2 phi(h)^-1 for some h"));
  conj->add_option("g1", o.g1, "Element name or word")->required();
  conj->add_option("g2", o.g2, "Element name or word")->required();
  CLI::App* classes = with_pair(app.add_subcommand("classes", "List Reidemeister class representatives"));
  CLI::App* number = with_pair(app.add_subcommand("number", "Print the Reidemeister number"));
  CLI::App* verify = with_pair(app.add_subcommand("verify", "Compare against brute force on a finite group"));
  verify->add_option("--trials", o.trials, "Random endomorphism pairs to add");
  verify->add_option("--seed", o.seed, "Random seed");
  CLI::App* check = app.add_subcommand("check", "Validate a problem file");
  check->add_option("file", o.file, "Problem file")->required();
  check->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  try {
    const ProblemFile problem = parse_problem_file(o.file, ParseOptions{o.skip_hom_check});
    if (*conj) return cmd_conj(o, problem);
    if (*classes) return cmd_classes(o, problem, false);
    if (*number) return cmd_classes(o, problem, true);
    if (*verify) return cmd_verify(o, problem, verify->count("--phi") + verify->count("--psi") > 0);
    return cmd_check(o, problem);
  } catch (const ProblemFileError& e) {
    switch (e.kind()) {
      case ProblemFileError::Kind::io: return report(o, io, "io", e.what());
      case ProblemFileError::Kind::syntax: return report(o, invalid, "syntax", e.what());
      case ProblemFileError::Kind::validation: return report(o, validation, "validation", e.what());
    }
  } catch (const UsageError& e) {
    return report(o, invalid, "usage", e.what());
  } catch (const InfiniteCoincidenceError& e) {
    return report(o, coincidence, "infinite-coincidence", e.what());
  } catch (const EnumerationLimitError& e) {
    return report(o, cap, "enumeration-limit", e.what());
  } catch (const MorphismError& e) {
    return report(o, invalid, "morphism", e.what());
  } catch (const Error& e) {
    return report(o, invalid, "error", e.what());
  }
  return invalid;
}

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "linalg_checks.hpp"
#include "properties.hpp"
#include "support.hpp"

#include "reid/oracle.hpp"
#include "reid/problem_file.hpp"
#include "reid/twisted.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace reid;
using namespace reid::testing;

namespace {

// Sizes and limits. Every comparison below is exact.
constexpr double kGoldenSeconds = 10.0;
constexpr std::size_t kOracleCases = 150;
constexpr std::size_t kOracleMaxOrder = 200;
constexpr std::uint64_t kOracleSeed = 11;
constexpr std::size_t kOracleSamples = 40;
constexpr std::size_t kDeterminantPairs = 200;
constexpr std::size_t kDeterminantMaxRank = 4;
constexpr long kDeterminantEntry = 5;
constexpr std::size_t kMatrices = 500;
constexpr std::size_t kMatrixMaxDim = 8;
constexpr long kMatrixEntry = 100;
constexpr std::size_t kMinorsMaxDim = 5;
constexpr std::size_t kAssociativityTriples = 1000;
constexpr std::size_t kStructureCases = 60;
constexpr std::uint64_t kStructureSeed = 13;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 10) failures.push_back(why);
  }
  void fail_all(const std::vector<std::string>& whys, const std::string& where) {
    for (const auto& w : whys) fail(where + ": " + w);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void golden(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemFile file = parse_problem_file(std::string(REID_DATA_DIR) + "/example_group.json");
  const auto& g = file.group;
  const EndoPair pair(*file.endomorphism("phi"), *file.endomorphism("psi"));
  TwistedSolver solver;
  const PcpElement g1 = g->generator(0);

  if (solver.rep_twist_conj(pair, g1, g->power(g1, 2))) out.fail("(a) g1 and g1^2 reported conjugate");

  const PcpElement g1_cubed = g->power(g1, 3);
  const auto cube = solver.rep_twist_conj(pair, g1, g1_cubed);
  if (!cube) out.fail("(b) g1 and g1^3 reported not conjugate");
  else if (!verify_witness(pair, g1, g1_cubed, cube.witness())) out.fail("(b) witness does not verify");
  else out.detail << "witness " << g->format(cube.witness()) << ", ";

  const auto classes = solver.reps_reid_classes(pair);
  if (!classes.is_finite() || classes.number() != 8) {
    out.fail("(c) expected 8 classes");
  } else {
    const std::vector<IntVector> known{{0, 0, 0, 0}, {1, 1, 1, 0}, {1, 1, 0, 0}, {1, 0, 1, 0},
                                       {1, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    for (const auto& e : known) {
      const PcpElement p = g->element(e);
      std::size_t matches = 0;
      for (const auto& r : classes.representatives())
        if (solver.rep_twist_conj(pair, p, r)) ++matches;
      if (matches != 1)
        out.fail("(c) " + g->format(p) + " matches " + std::to_string(matches) + " representatives");
    }
    out.detail << "8 classes, ";
  }

  if (solver.reps_reid_classes(EndoPair(GroupMorphism::identity(g), pair.psi())).is_finite())
    out.fail("(d) classes(id, psi) reported finite");

  const double t = seconds_since(start);
  if (t >= kGoldenSeconds) out.fail("took " + std::to_string(t) + " s");
  out.detail << t << " s";
}

void oracle(Outcome& out) {
  const auto corpus = generate_corpus(kOracleSeed, kOracleCases, kOracleMaxOrder);
  std::mt19937_64 rng(kOracleSeed);
  std::size_t queries = 0, witnesses = 0;
  std::set<std::size_t> lengths;
  for (const auto& c : corpus) {
    if (!c.pair.group()->is_finite() || c.pair.group()->order() > kOracleMaxOrder) {
      out.fail(c.name + ": group outside the order bound");
      continue;
    }
    lengths.insert(derived_length(c.pair.group()));
    const FiniteGroupTable table(c.pair.group());
    TwistedSolver solver;
    const CompareReport r = compare(c.pair, table, solver, rng, kOracleSamples);
    queries += r.queries;
    witnesses += r.witnesses_checked;
    out.fail_all(r.mismatches, c.name);
  }
  out.detail << corpus.size() << " cases, " << queries << " queries, " << witnesses
             << " witnesses verified, derived lengths " << *lengths.begin() << ".." << *lengths.rbegin();
}

void determinant_law(Outcome& out) {
  std::mt19937_64 rng(17);
  std::size_t infinite = 0;
  for (std::size_t t = 0; t < kDeterminantPairs; ++t) {
    const std::size_t n = 1 + t % kDeterminantMaxRank;
    const auto zn = PcpPresentation::free_abelian(n);
    IntMatrix p(n, n), q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        p(i, j) = uniform(rng, -kDeterminantEntry, kDeterminantEntry);
        q(i, j) = uniform(rng, -kDeterminantEntry, kDeterminantEntry);
      }
    // make singular differences show up regularly
    if (t % 7 == 0)
      for (std::size_t j = 0; j < n; ++j) q(0, j) = p(0, j);
    auto map = [&](const IntMatrix& m) {
      std::vector<PcpElement> images;
      for (std::size_t j = 0; j < n; ++j) images.push_back(zn->element(m.column(j)));
      return GroupMorphism(zn, zn, images);
    };
    const Integer det = laplace_determinant(q - p);
    const auto r = reidemeister_number(EndoPair(map(p), map(q)));
    if (det == 0) {
      ++infinite;
      if (r) out.fail("finite answer for a singular difference");
    } else if (!r || Integer(*r) != abs(det)) {
      out.fail("count differs from |det| = " + det.get_str());
    }
  }
  out.detail << kDeterminantPairs << " pairs, " << infinite << " singular";
}

void linear_algebra(Outcome& out) {
  std::mt19937_64 rng(19);
  std::size_t with_minors = 0;
  for (std::size_t t = 0; t < kMatrices; ++t) {
    const IntMatrix a = random_matrix(rng, kMatrixMaxDim, kMatrixEntry);
    const bool minors = a.rows() <= kMinorsMaxDim && a.cols() <= kMinorsMaxDim;
    with_minors += minors;
    out.fail_all(check_hermite(a), "matrix " + std::to_string(t));
    out.fail_all(check_smith(a, minors), "matrix " + std::to_string(t));
    out.fail_all(check_solvers(a, rng), "matrix " + std::to_string(t));
  }
  out.detail << kMatrices << " matrices, " << with_minors << " also checked against determinantal divisors";
}

void collection(Outcome& out) {
  const auto corpus = generate_corpus(kOracleSeed, kOracleCases, kOracleMaxOrder);
  std::vector<PresentationPtr> groups;
  std::set<const PcpPresentation*> seen;
  for (const auto& c : corpus)
    if (seen.insert(c.pair.group().get()).second) groups.push_back(c.pair.group());
  std::mt19937_64 rng(23);
  std::size_t triples = 0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    const std::string name = "group " + std::to_string(k);
    out.fail_all(g->consistency_violations(), name);
    const FiniteGroupTable table(g);
    Integer product = 1;
    for (const auto& r : g->relative_orders()) product *= r;
    if (Integer(table.order()) != product) out.fail(name + ": normal form count differs from the product of orders");
    std::set<PcpElement> distinct(table.elements().begin(), table.elements().end());
    if (distinct.size() != table.order()) out.fail(name + ": repeated normal forms");
    for (std::size_t t = 0; t < kAssociativityTriples; ++t) {
      const PcpElement& x = table.element(pick_index(rng, table.order()));
      const PcpElement& y = table.element(pick_index(rng, table.order()));
      const PcpElement& z = table.element(pick_index(rng, table.order()));
      if (g->multiply(g->multiply(x, y), z) != g->multiply(x, g->multiply(y, z))) out.fail(name + ": not associative");
      ++triples;
    }
  }
  out.detail << groups.size() << " groups, " << triples << " associativity triples";
}

void structure(Outcome& out) {
  const auto corpus = generate_corpus(kStructureSeed, kStructureCases, kOracleMaxOrder);
  std::mt19937_64 rng(kStructureSeed);
  std::size_t subgroups = 0;
  for (const auto& c : corpus) {
    const FiniteGroupTable table(c.pair.group());
    TwistedSolver solver;
    out.fail_all(check_coherence(c.pair, table, solver, rng, 10), c.name + " coherence");
    out.fail_all(check_inner_invariance(c.pair, table, solver, rng, 2), c.name + " inner twisting");
    for (const auto& n : invariant_normal_subgroups(c.pair, table, rng)) {
      ++subgroups;
      out.fail_all(check_partition(c.pair, n, table, solver), c.name + " partition");
    }
  }
  for (std::size_t t = 0; t < 200; ++t) out.fail_all(check_hirsch_equality(rng), "abelian endomorphism");
  out.detail << corpus.size() << " pairs, " << subgroups << " normal subgroups, 200 abelian endomorphisms";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"example session reproduced", golden},
      {"algorithms agree with brute force", oracle},
      {"abelian determinant law", determinant_law},
      {"linear algebra invariants", linear_algebra},
      {"collection and presentations", collection},
      {"structural properties", structure},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    all = all && out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << out.detail.str() << "; " << seconds_since(start) << " s)\n";
    for (const auto& f : out.failures) std::cout << "  " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}

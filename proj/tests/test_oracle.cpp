#include "support.hpp"

#include "reid/errors.hpp"
#include "reid/oracle.hpp"

#include <doctest.h>

#include <set>

using namespace reid;
using namespace reid::testing;

namespace {

EndoPair identity_pair(const PresentationPtr& g) {
  return EndoPair(GroupMorphism::identity(g), GroupMorphism::identity(g));
}

GroupMorphism scalar(const PresentationPtr& g, long k) {
  return GroupMorphism(g, g, {g->power(g->generator(0), k)});
}

}  // namespace

TEST_CASE("enumeration") {
  CHECK(enumerate_group(PcpPresentation::trivial()).order() == 1);
  const auto table = enumerate_group(s3());
  CHECK(table.order() == 6);
  std::set<PcpElement> distinct(table.elements().begin(), table.elements().end());
  CHECK(distinct.size() == 6);
  CHECK_THROWS_AS(enumerate_group(example_group()), InfiniteGroupError);
}

TEST_CASE("multiplication table matches collection") {
  const auto g = s3();
  const FiniteGroupTable table(g);
  for (std::size_t a = 0; a < table.order(); ++a) {
    CHECK(table.multiply(a, table.inverse(a)) == table.index_of(g->identity()));
    for (std::size_t b = 0; b < table.order(); ++b)
      CHECK(table.element(table.multiply(a, b)) == g->multiply(table.element(a), table.element(b)));
  }
}

TEST_CASE("brute-force classes") {
  CHECK(brute_classes(identity_pair(s3())).classes.size() == 3);
  CHECK(brute_classes(identity_pair(cyclic(4))).classes.size() == 4);
  CHECK(brute_classes(identity_pair(PcpPresentation::trivial())).classes.size() == 1);

  // (x2, id) on Z/4: h.g = g - h, a single class
  const auto z4 = cyclic(4);
  CHECK(brute_classes(EndoPair(scalar(z4, 2), GroupMorphism::identity(z4))).classes.size() == 1);
  // (x3, id) on Z/4: image of -2h is {0, 2}
  CHECK(brute_classes(EndoPair(scalar(z4, 3), GroupMorphism::identity(z4))).classes.size() == 2);
}

TEST_CASE("brute-force classes partition the group") {
  const auto corpus = generate_corpus(3, 20, 100);
  for (const auto& c : corpus) {
    const FiniteGroupTable table(c.pair.group());
    const Partition p = brute_classes(c.pair, table);
    std::vector<int> seen(table.order(), 0);
    for (std::size_t k = 0; k < p.classes.size(); ++k)
      for (auto i : p.classes[k]) {
        ++seen[i];
        CHECK(p.class_of[i] == k);
      }
    for (int s : seen) CHECK(s == 1);
  }
}

TEST_CASE("brute-force witnesses") {
  const auto g = s3();
  const FiniteGroupTable table(g);
  const EndoPair id = identity_pair(g);
  const PcpElement a = g->generator(0), b = g->generator(1);
  // ordinary conjugacy: b ~ b^2, a ~ ab, a !~ b
  const auto h = brute_witness(id, table, b, g->power(b, 2));
  REQUIRE(h);
  CHECK(verify_witness(id, b, g->power(b, 2), *h));
  CHECK(brute_witness(id, table, a, g->multiply(a, b)));
  CHECK_FALSE(brute_witness(id, table, a, b));
  CHECK(brute_witness(id, table, a, a)->is_identity());
}

TEST_CASE("algorithm agrees with brute force on small groups") {
  const auto z4 = cyclic(4);
  for (long x = 0; x < 4; ++x)
    for (long y = 0; y < 4; ++y) {
      INFO(x << " " << y);
      const auto report = compare(EndoPair(scalar(z4, x), scalar(z4, y)), 16);
      CHECK(report.ok());
    }
  const auto s = s3();
  const PcpElement b = s->generator(1);
  const GroupMorphism inner(s, s, {s->conjugate(s->generator(0), b), b});
  const GroupMorphism collapse(s, s, {s->generator(0), s->identity()});
  for (const auto& phi : {GroupMorphism::identity(s), inner, collapse})
    for (const auto& psi : {GroupMorphism::identity(s), inner, collapse}) {
      const auto report = compare(EndoPair(phi, psi), 20);
      CHECK(report.ok());
      CHECK(report.algorithm_count == report.brute_count);
    }
}

TEST_CASE("random presentations are consistent and sized as claimed") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 40; ++t) {
    const auto g = random_finite_presentation(rng, 200);
    CHECK(g->consistency_violations().empty());
    CHECK(g->is_finite());
    const FiniteGroupTable table(g);
    CHECK(Integer(table.order()) == g->order());
    CHECK(table.order() <= 200);
  }
  for (const auto& g : curated_finite_presentations()) CHECK(g->consistency_violations().empty());
}

TEST_CASE("random endomorphisms respect the relations") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_finite_presentation(rng, 100);
    const FiniteGroupTable table(g);
    const auto f = random_endomorphism(table, rng);
    if (!f) continue;
    CHECK(verify_morphism(*g, *g, f->images()));
    for (int s = 0; s < 10; ++s) {
      const PcpElement& x = table.element(rng() % table.order());
      const PcpElement& y = table.element(rng() % table.order());
      CHECK((*f)(g->multiply(x, y)) == g->multiply((*f)(x), (*f)(y)));
    }
  }
}

TEST_CASE("corpus covers several derived lengths and agrees with the algorithm") {
  const auto corpus = generate_corpus(7, 40);
  std::set<std::size_t> lengths;
  for (const auto& c : corpus) {
    INFO(c.name);
    lengths.insert(derived_length(c.pair.group()));
    const auto report = compare(c.pair, 20, 1);
    CHECK(report.ok());
  }
  CHECK(lengths.size() >= 3);
}

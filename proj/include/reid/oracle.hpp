#pragma once

// Brute-force ground truth on finite polycyclic groups, plus a generator of
// random finite presentations and endomorphisms to feed it.

#include "reid/pcp.hpp"
#include "reid/twisted.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace reid {

/// All elements of a finite pcp group, indexed in mixed-radix order of their
/// exponent vectors, with a full multiplication table.
class FiniteGroupTable {
 public:
  /// Throws InfiniteGroupError unless every relative order is finite.
  explicit FiniteGroupTable(PresentationPtr presentation);

  const PresentationPtr& presentation() const { return presentation_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<PcpElement>& elements() const { return elements_; }
  const PcpElement& element(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(const PcpElement& x) const;

  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  std::size_t generator_index(std::size_t k) const { return generators_[k]; }

  /// Index of the image of x under the map sending generator k to element images[k].
  std::size_t evaluate(const std::vector<std::size_t>& images, const PcpElement& x) const;

 private:
  PresentationPtr presentation_;
  std::vector<Integer> strides_;
  std::vector<PcpElement> elements_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> inverses_;
  std::vector<std::size_t> generators_;
};

FiniteGroupTable enumerate_group(const PresentationPtr& presentation);

struct Partition {
  std::vector<std::vector<std::size_t>> classes;  // element indices, each class sorted
  std::vector<std::size_t> class_of;              // element index -> class index
};

/// Orbits of h.g = psi(h) g phi(h)^-1.
Partition brute_classes(const EndoPair& pair, const FiniteGroupTable& table);
Partition brute_classes(const EndoPair& pair);

/// First h in table order with g1 = psi(h) g2 phi(h)^-1.
std::optional<PcpElement> brute_witness(const EndoPair& pair, const FiniteGroupTable& table, const PcpElement& g1,
                                        const PcpElement& g2);

struct CompareReport {
  bool ok() const { return mismatches.empty(); }

  std::size_t brute_count = 0;
  std::optional<std::size_t> algorithm_count;
  std::size_t queries = 0;
  std::size_t witnesses_checked = 0;
  std::vector<std::string> mismatches;
};

/// Checks class counts, that representatives land in distinct orbits, and
/// `samples` random conjugacy queries against the brute-force partition.
CompareReport compare(const EndoPair& pair, const FiniteGroupTable& table, TwistedSolver& solver,
                      std::mt19937_64& rng, std::size_t samples = 40);
CompareReport compare(const EndoPair& pair, std::size_t samples = 40, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Random instances

/// A random endomorphism, found by assigning generator images from the last
/// generator up and keeping only candidates that satisfy the relations seen so
/// far. Nothing if `attempts` restarts all hit a dead end.
std::optional<GroupMorphism> random_endomorphism(const FiniteGroupTable& table, std::mt19937_64& rng,
                                                 std::size_t attempts = 20);

/// A consistent finite presentation of order at most `max_order`, built as
/// an iterated cyclic extension.
PresentationPtr random_finite_presentation(std::mt19937_64& rng, std::size_t max_order,
                                           std::size_t max_generators = 6);

/// S4 and GL(2,3), of derived length 3 and 4.
std::vector<PresentationPtr> curated_finite_presentations();

struct CorpusCase {
  std::string name;
  EndoPair pair;
};

/// `count` cases over random groups with identity, inner and random endomorphisms mixed in.
std::vector<CorpusCase> generate_corpus(std::uint64_t seed, std::size_t count, std::size_t max_order = 200);

}  // namespace reid

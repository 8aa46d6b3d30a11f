#pragma once

// Consistent polycyclic presentations and their elements.
//
// Generators g_1..g_n are indexed from 0 internally. A presentation consists of
//   * relative orders r_i (0 encodes infinite order),
//   * power relations     g_i^{r_i}        = w   (finite r_i),
//   * conjugate relations g_j^{g_i}        = w   (i < j),
//   * and for infinite r_i g_j^{g_i^{-1}}  = w   (i < j),
// where every right-hand side w is a word in g_{i+1}..g_n. Elements are kept
// as exponent vectors in collected normal form g_1^{e_1} ... g_n^{e_n} with
// 0 <= e_i < r_i whenever r_i is finite.
//
// Conventions: x^y = y^-1 x y and [a, b] = a^-1 b^-1 a b.

#include "reid/integer.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace reid {

struct Syllable {
  std::size_t generator;  // 0-based
  Integer exponent;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

using Word = std::vector<Syllable>;

class PcpElement {
 public:
  PcpElement() = default;
  explicit PcpElement(IntVector exponents) : exponents_(std::move(exponents)) {}

  const IntVector& exponents() const { return exponents_; }
  std::size_t size() const { return exponents_.size(); }
  const Integer& operator[](std::size_t i) const { return exponents_[i]; }

  bool is_identity() const { return reid::is_zero(exponents_); }
  /// Index of the first nonzero exponent; empty for the identity.
  std::optional<std::size_t> depth() const;
  const Integer& leading_exponent() const;

  friend bool operator==(const PcpElement&, const PcpElement&) = default;
  friend bool operator<(const PcpElement& a, const PcpElement& b);

 private:
  IntVector exponents_;
};

struct PcpElementHash {
  std::size_t operator()(const PcpElement& x) const;
};

class PcpPresentation;
using PresentationPtr = std::shared_ptr<const PcpPresentation>;

/// Whether to run the overlap consistency test when building a presentation.
enum class ConsistencyCheck { run, skip };

/// Collects relations and produces a PcpPresentation. Relations left unset
/// are trivial: g_i^{r_i} = 1 and g_j^{g_i} = g_j.
class PcpBuilder {
 public:
  explicit PcpBuilder(std::size_t generators);

  std::size_t size() const { return relative_orders_.size(); }

  PcpBuilder& relative_order(std::size_t i, Integer order);
  PcpBuilder& power(std::size_t i, Word rhs);
  PcpBuilder& conjugate(std::size_t j, std::size_t i, Word rhs);
  PcpBuilder& inverse_conjugate(std::size_t j, std::size_t i, Word rhs);

  /// Throws PresentationError on an index violation or (unless skipped) an inconsistency.
  PresentationPtr build(ConsistencyCheck check = ConsistencyCheck::run) const;

 private:
  friend class PcpPresentation;
  IntVector relative_orders_;
  std::vector<Word> powers_;
  std::vector<std::vector<Word>> conjugates_;          // [i][j], i < j
  std::vector<std::vector<Word>> inverse_conjugates_;  // [i][j], i < j
  std::vector<std::vector<bool>> conjugate_set_;
  std::vector<std::vector<bool>> inverse_conjugate_set_;
};

class PcpPresentation {
 public:
  std::size_t size() const { return relative_orders_.size(); }
  const IntVector& relative_orders() const { return relative_orders_; }
  const Integer& relative_order(std::size_t i) const { return relative_orders_[i]; }
  bool has_finite_order(std::size_t i) const { return relative_orders_[i] != 0; }
  /// All relative orders finite.
  bool is_finite() const;
  /// Product of relative orders; throws InfiniteGroupError for infinite groups.
  Integer order() const;

  PcpElement identity() const { return PcpElement(IntVector(size())); }
  PcpElement generator(std::size_t i) const;
  /// Normal form of g_1^{e_1} ... g_n^{e_n} for arbitrary integers e_i.
  PcpElement element(const IntVector& exponents) const;
  /// Normal form of an arbitrary word.
  PcpElement collect(const Word& w) const;

  PcpElement multiply(const PcpElement& a, const PcpElement& b) const;
  PcpElement invert(const PcpElement& a) const;
  PcpElement power(const PcpElement& a, const Integer& e) const;
  /// by^-1 x by
  PcpElement conjugate(const PcpElement& x, const PcpElement& by) const;
  /// a^-1 b^-1 a b
  PcpElement commutator(const PcpElement& a, const PcpElement& b) const;

  /// Right-hand side of g_i^{r_i}; identity for infinite r_i.
  const PcpElement& power_relation(std::size_t i) const { return powers_[i]; }
  /// Right-hand side of g_j^{g_i} (or of g_j^{g_i^-1} when `inverse`), i < j.
  const PcpElement& conjugate_relation(std::size_t j, std::size_t i, bool inverse = false) const;

  /// Failed overlap tests; empty iff the presentation is consistent.
  std::vector<std::string> consistency_violations() const;

  Word to_word(const PcpElement& x) const;
  /// Human-readable normal form such as "g1*g4^-1"; "id" for the identity.
  std::string format(const PcpElement& x) const;

  /// Builder reproducing this presentation's relations in normal-form words.
  PcpBuilder to_builder() const;

  static PresentationPtr trivial();
  /// Free abelian group Z^n.
  static PresentationPtr free_abelian(std::size_t n);

 private:
  friend class PcpBuilder;
  PcpPresentation() = default;

  // x := x * g_k^e, x in normal form
  void multiply_generator_power(IntVector& x, std::size_t k, const Integer& e) const;
  // y := y^{g_k^{sign}} for y supported on generators > k
  void conjugate_tail(IntVector& y, std::size_t k, int sign) const;
  IntVector multiply_vectors(IntVector a, const IntVector& b) const;
  IntVector power_vector(const IntVector& a, Integer e) const;
  IntVector invert_vector(const IntVector& a) const;

  IntVector relative_orders_;
  std::vector<PcpElement> powers_;
  std::vector<std::vector<PcpElement>> conjugates_;
  std::vector<std::vector<PcpElement>> inverse_conjugates_;
  std::vector<bool> acts_trivially_;  // g_k commutes with every later generator
};

// ---------------------------------------------------------------------------
// Subgroups

/// Induced generating sequence of a subgroup: members have strictly increasing
/// depths, positive minimal leading exponents, and exponents at the depths of
/// later members reduced, so equal subgroups have equal sequences.
class Igs {
 public:
  explicit Igs(PresentationPtr presentation) : presentation_(std::move(presentation)) {}

  /// Smallest subgroup containing `generators`.
  static Igs generated_by(PresentationPtr presentation, const std::vector<PcpElement>& generators);

  const PresentationPtr& presentation() const { return presentation_; }
  const std::vector<PcpElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_trivial() const { return elements_.empty(); }
  const std::vector<std::size_t>& depths() const { return depths_; }
  /// Relative orders of the induced presentation (0 = infinite).
  IntVector relative_orders() const;

  /// Residue after dividing out the sequence from the left. The identity
  /// exactly when x is a member; otherwise the residue's leading exponent is
  /// not a multiple of any member's leading exponent at that depth.
  PcpElement sift(const PcpElement& x) const;
  bool contains(const PcpElement& x) const { return sift(x).is_identity(); }
  /// Exponents c with x = s_1^{c_1} ... s_m^{c_m}, or nothing for non-members.
  std::optional<IntVector> express(const PcpElement& x) const;
  /// s_1^{c_1} ... s_m^{c_m}
  PcpElement embed(const IntVector& coefficients) const;

  friend bool operator==(const Igs& a, const Igs& b) { return a.elements_ == b.elements_; }

 private:
  friend class IgsBuilder;
  PresentationPtr presentation_;
  std::vector<PcpElement> elements_;
  std::vector<std::size_t> depths_;
};

/// Smallest normal subgroup containing `generators`.
Igs normal_closure(const PresentationPtr& presentation, const std::vector<PcpElement>& generators);
/// Commutator subgroup [G, G].
Igs derived_subgroup(const PresentationPtr& presentation);
/// Number of steps for the derived series to reach the trivial subgroup.
std::size_t derived_length(const PresentationPtr& presentation);

/// A subgroup as a group in its own right, with maps to and from the ambient group.
class InducedPresentation {
 public:
  explicit InducedPresentation(Igs subgroup);

  const PresentationPtr& presentation() const { return presentation_; }
  const Igs& subgroup() const { return subgroup_; }
  const PresentationPtr& ambient() const { return subgroup_.presentation(); }

  PcpElement embed(const PcpElement& x) const { return subgroup_.embed(x.exponents()); }
  /// Coordinates of an ambient element in the induced presentation; nothing for non-members.
  std::optional<PcpElement> express(const PcpElement& x) const;

 private:
  Igs subgroup_;
  PresentationPtr presentation_;
};

InducedPresentation induced_presentation(const Igs& subgroup);

// ---------------------------------------------------------------------------
// Morphisms

/// `trusted` marks images derived from a verified morphism (restriction,
/// inner twisting) as verified without re-checking.
enum class MorphismCheck { verify, skip, trusted };

/// Homomorphism between polycyclic groups given by generator images.
class GroupMorphism {
 public:
  GroupMorphism(PresentationPtr domain, PresentationPtr codomain, std::vector<PcpElement> images,
                MorphismCheck check = MorphismCheck::verify);

  static GroupMorphism identity(const PresentationPtr& group);

  const PresentationPtr& domain() const { return domain_; }
  const PresentationPtr& codomain() const { return codomain_; }
  const std::vector<PcpElement>& images() const { return images_; }
  bool verified() const { return verified_; }
  bool is_endomorphism() const { return domain_ == codomain_; }

  PcpElement apply(const PcpElement& x) const;
  PcpElement operator()(const PcpElement& x) const { return apply(x); }

 private:
  PresentationPtr domain_;
  PresentationPtr codomain_;
  std::vector<PcpElement> images_;
  bool verified_ = false;
};

/// True iff every defining relation of `domain` maps to a relation of `codomain`.
bool verify_morphism(const PcpPresentation& domain, const PcpPresentation& codomain,
                     const std::vector<PcpElement>& images);

/// x -> g * phi(x) * g^-1
GroupMorphism compose_with_inner(const GroupMorphism& phi, const PcpElement& g);

/// phi restricted to an invariant subgroup, on that subgroup's induced presentation.
/// Throws NotInvariantError if phi does not map the subgroup into itself.
GroupMorphism restrict_morphism(const GroupMorphism& phi, const InducedPresentation& subgroup);

}  // namespace reid

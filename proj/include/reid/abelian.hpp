#pragma once

// Finitely generated abelian groups Z^m / L, with L spanned by the columns of
// a relation matrix. Elements are written additively. Two coordinate systems
// are in play: generator coordinates (any vector in Z^m) and canonical
// coordinates with respect to the Smith basis, where component i is reduced
// into [0, d_i) for each nonzero invariant factor d_i.

#include "reid/intlinalg.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace reid {

struct AbElement {
  IntVector coords;  // canonical coordinates

  friend bool operator==(const AbElement&, const AbElement&) = default;
  friend bool operator<(const AbElement& a, const AbElement& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
  }
};

class FgAbelianGroup {
 public:
  /// Z^{relations.rows()} modulo the column lattice of `relations`.
  explicit FgAbelianGroup(IntMatrix relations);
  /// Z/d_1 + ... + Z/d_k, with d_i = 0 meaning Z.
  static FgAbelianGroup from_invariants(const IntVector& d);

  std::size_t generator_count() const { return relations_.rows(); }
  const IntMatrix& relations() const { return relations_; }
  /// Invariant factors other than 1; zeros (free summands) come last.
  const IntVector& invariants() const { return invariants_; }
  const SmithDecomposition& smith() const { return snf_; }

  bool is_finite() const;
  /// Throws InfiniteGroupError for infinite groups.
  Integer order() const;
  std::size_t hirsch_length() const;

  AbElement zero() const { return AbElement{IntVector(invariants_.size())}; }
  AbElement canonical(const IntVector& generator_coords) const;
  /// Generator coordinates of a canonical element.
  IntVector lift(const AbElement& x) const;
  bool is_zero(const IntVector& generator_coords) const;
  AbElement add(const AbElement& a, const AbElement& b) const;
  AbElement negate(const AbElement& a) const;

  /// Every element once, in canonical form. Throws InfiniteGroupError for
  /// infinite groups and EnumerationLimitError if the order exceeds `limit`.
  std::vector<AbElement> enumerate(const std::optional<Integer>& limit = std::nullopt) const;

 private:
  IntMatrix relations_;
  SmithDecomposition snf_;
  IntVector invariants_;
  IntMatrix to_canonical_;    // rows of U for the kept factors
  IntMatrix from_canonical_;  // matching columns of U^-1
};

using AbGroupPtr = std::shared_ptr<const FgAbelianGroup>;

/// Homomorphism given by its matrix on generator coordinates
/// (codomain generators x domain generators).
class AbHom {
 public:
  /// Throws std::invalid_argument if the matrix does not respect the relations.
  AbHom(AbGroupPtr domain, AbGroupPtr codomain, IntMatrix matrix);

  const AbGroupPtr& domain() const { return domain_; }
  const AbGroupPtr& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  AbElement apply(const AbElement& x) const;
  IntVector apply_coords(const IntVector& generator_coords) const { return matrix_ * generator_coords; }

 private:
  AbGroupPtr domain_;
  AbGroupPtr codomain_;
  IntMatrix matrix_;
};

/// psi - phi; both maps must share domain and codomain.
AbHom hom_difference(const AbHom& phi, const AbHom& psi);

struct AbSubgroup {
  AbGroupPtr group;
  AbHom embedding;
};

struct AbQuotient {
  AbGroupPtr group;
  AbHom projection;
};

AbSubgroup kernel(const AbHom& f);
AbQuotient cokernel(const AbHom& f);

/// Some h with psi(h) - phi(h) = g, or nothing when g is outside im(psi - phi).
std::optional<AbElement> rep_twist_conj_to_id_ab(const AbHom& phi, const AbHom& psi, const AbElement& g);

/// Representatives of coker(psi - phi) lifted to the group, or nothing when it is infinite.
std::optional<std::vector<AbElement>> reps_reid_classes_ab(const AbHom& phi, const AbHom& psi,
                                                           const std::optional<Integer>& limit = std::nullopt);

}  // namespace reid

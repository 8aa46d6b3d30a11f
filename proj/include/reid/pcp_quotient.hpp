#pragma once

// Abelian quotients G/N of a polycyclic group, presented on the pcp generators.

#include "reid/abelian.hpp"
#include "reid/pcp.hpp"

namespace reid {

class AbelianQuotient {
 public:
  /// Throws NotAbelianQuotientError unless N is normal and contains [G, G].
  explicit AbelianQuotient(Igs normal_subgroup);

  const PresentationPtr& presentation() const { return kernel_.presentation(); }
  const Igs& kernel() const { return kernel_; }
  const AbGroupPtr& group() const { return group_; }

  AbElement project(const PcpElement& x) const { return group_->canonical(x.exponents()); }
  /// A preimage in G of a quotient element.
  PcpElement section(const AbElement& x) const;

 private:
  Igs kernel_;
  AbGroupPtr group_;
};

AbelianQuotient abelian_quotient(const Igs& normal_subgroup);

/// The map induced by an endomorphism on G/N. Throws NotInvariantError when phi(N) is not inside N.
AbHom induce_on_quotient(const GroupMorphism& phi, const AbelianQuotient& quotient);

}  // namespace reid

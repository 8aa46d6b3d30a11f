#include "reid/pcp_quotient.hpp"

#include "reid/errors.hpp"

namespace reid {

namespace {

IntVector relation_column(std::size_t n, std::size_t lead, const Integer& coeff, const PcpElement& rhs) {
  IntVector c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = -rhs[k];
  c[lead] += coeff;
  return c;
}

}  // namespace

AbelianQuotient::AbelianQuotient(Igs normal_subgroup) : kernel_(std::move(normal_subgroup)) {
  const PcpPresentation& p = *kernel_.presentation();
  const std::size_t n = p.size();

  for (std::size_t i = 0; i < n; ++i) {
    const PcpElement gi = p.generator(i);
    for (const auto& s : kernel_.elements())
      if (!kernel_.contains(p.conjugate(s, gi))) throw NotAbelianQuotientError("subgroup is not normal");
    for (std::size_t j = i + 1; j < n; ++j)
      if (!kernel_.contains(p.commutator(p.generator(j), gi)))
        throw NotAbelianQuotientError();
  }

  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.has_finite_order(i)) cols.push_back(relation_column(n, i, p.relative_order(i), p.power_relation(i)));
    for (std::size_t j = i + 1; j < n; ++j) {
      cols.push_back(relation_column(n, j, 1, p.conjugate_relation(j, i)));
      if (!p.has_finite_order(i)) cols.push_back(relation_column(n, j, 1, p.conjugate_relation(j, i, true)));
    }
  }
  for (const auto& s : kernel_.elements()) cols.push_back(s.exponents());
  group_ = std::make_shared<const FgAbelianGroup>(IntMatrix::from_columns(n, cols));
}

PcpElement AbelianQuotient::section(const AbElement& x) const {
  return presentation()->element(group_->lift(x));
}

AbelianQuotient abelian_quotient(const Igs& normal_subgroup) { return AbelianQuotient(normal_subgroup); }

AbHom induce_on_quotient(const GroupMorphism& phi, const AbelianQuotient& quotient) {
  if (phi.domain() != quotient.presentation() || phi.codomain() != quotient.presentation())
    throw MorphismError("induce_on_quotient: map is not an endomorphism of the quotient's group");
  for (const auto& s : quotient.kernel().elements())
    if (!quotient.kernel().contains(phi(s))) throw NotInvariantError();
  const std::size_t n = quotient.presentation()->size();
  std::vector<IntVector> cols;
  for (const auto& img : phi.images()) cols.push_back(img.exponents());
  return AbHom(quotient.group(), quotient.group(), IntMatrix::from_columns(n, cols));
}

}  // namespace reid

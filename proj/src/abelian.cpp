#include "reid/abelian.hpp"

#include "reid/errors.hpp"

#include <stdexcept>

namespace reid {

FgAbelianGroup::FgAbelianGroup(IntMatrix relations) : relations_(std::move(relations)), snf_(snf(relations_)) {
  const std::size_t m = relations_.rows();
  const std::size_t diag = snf_.invariants.size();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i) {
    Integer d = i < diag ? snf_.invariants[i] : Integer(0);
    if (d == 1) continue;
    kept.push_back(i);
    invariants_.push_back(d);
  }
  const IntMatrix u_inv = inverse_unimodular(snf_.U);
  to_canonical_ = IntMatrix(kept.size(), m);
  from_canonical_ = IntMatrix(m, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (std::size_t j = 0; j < m; ++j) {
      to_canonical_(k, j) = snf_.U(kept[k], j);
      from_canonical_(j, k) = u_inv(j, kept[k]);
    }
}

FgAbelianGroup FgAbelianGroup::from_invariants(const IntVector& d) {
  return FgAbelianGroup(IntMatrix::diagonal(d));
}

bool FgAbelianGroup::is_finite() const {
  for (const auto& d : invariants_)
    if (d == 0) return false;
  return true;
}

Integer FgAbelianGroup::order() const {
  if (!is_finite()) throw InfiniteGroupError("order of an infinite abelian group");
  Integer o = 1;
  for (const auto& d : invariants_) o *= d;
  return o;
}

std::size_t FgAbelianGroup::hirsch_length() const {
  std::size_t h = 0;
  for (const auto& d : invariants_)
    if (d == 0) ++h;
  return h;
}

AbElement FgAbelianGroup::canonical(const IntVector& generator_coords) const {
  if (generator_coords.size() != generator_count())
    throw std::invalid_argument("abelian element has wrong number of coordinates");
  IntVector c = to_canonical_ * generator_coords;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (invariants_[i] != 0) c[i] = floor_mod(c[i], invariants_[i]);
  return AbElement{std::move(c)};
}

IntVector FgAbelianGroup::lift(const AbElement& x) const {
  if (x.coords.size() != invariants_.size()) throw std::invalid_argument("canonical element has wrong length");
  return from_canonical_ * x.coords;
}

bool FgAbelianGroup::is_zero(const IntVector& generator_coords) const {
  return reid::is_zero(canonical(generator_coords).coords);
}

AbElement FgAbelianGroup::add(const AbElement& a, const AbElement& b) const {
  IntVector c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.coords[i] + b.coords[i];
    if (invariants_[i] != 0) c[i] = floor_mod(c[i], invariants_[i]);
  }
  return AbElement{std::move(c)};
}

AbElement FgAbelianGroup::negate(const AbElement& a) const {
  IntVector c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = -a.coords[i];
    if (invariants_[i] != 0) c[i] = floor_mod(c[i], invariants_[i]);
  }
  return AbElement{std::move(c)};
}

std::vector<AbElement> FgAbelianGroup::enumerate(const std::optional<Integer>& limit) const {
  if (!is_finite()) throw InfiniteGroupError("cannot enumerate infinite group");
  const Integer total = order();
  if (limit && total > *limit)
    throw EnumerationLimitError("enumeration of " + total.get_str() + " elements exceeds the limit of " +
                                limit->get_str());
  std::vector<AbElement> out;
  out.reserve(total.get_ui());
  IntVector c(invariants_.size());
  for (;;) {
    out.push_back(AbElement{c});
    std::size_t i = c.size();
    while (i > 0) {
      --i;
      if (++c[i] < invariants_[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (c.empty()) return out;
  }
}

// ---------------------------------------------------------------------------

AbHom::AbHom(AbGroupPtr domain, AbGroupPtr codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_->generator_count() || matrix_.cols() != domain_->generator_count())
    throw std::invalid_argument("AbHom: matrix shape does not match the groups");
  const IntMatrix image = matrix_ * domain_->relations();
  for (std::size_t j = 0; j < image.cols(); ++j)
    if (!codomain_->is_zero(image.column(j)))
      throw std::invalid_argument("AbHom: matrix does not map relations to relations");
}

AbElement AbHom::apply(const AbElement& x) const { return codomain_->canonical(matrix_ * domain_->lift(x)); }

AbHom hom_difference(const AbHom& phi, const AbHom& psi) {
  if (phi.domain() != psi.domain() || phi.codomain() != psi.codomain())
    throw std::invalid_argument("hom_difference: maps between different groups");
  return AbHom(phi.domain(), phi.codomain(), psi.matrix() - phi.matrix());
}

AbSubgroup kernel(const AbHom& f) {
  const FgAbelianGroup& a = *f.domain();
  const FgAbelianGroup& b = *f.codomain();
  const std::size_t m = a.generator_count();
  // x is in the preimage lattice iff M x + R_B y = 0 for some y
  const IntMatrix stacked = f.matrix().concat_columns(b.relations());
  const IntMatrix solutions = kernel_basis(stacked);
  const IntMatrix basis = lattice_basis(solutions.row_range(0, m));
  std::vector<IntVector> relation_columns;
  for (const auto& r : a.relations().columns()) {
    auto c = lattice_member(basis, r);
    if (!c) throw std::logic_error("kernel: domain relation outside the preimage lattice");
    relation_columns.push_back(std::move(*c));
  }
  auto group = std::make_shared<const FgAbelianGroup>(IntMatrix::from_columns(basis.cols(), relation_columns));
  return AbSubgroup{group, AbHom(group, f.domain(), basis)};
}

AbQuotient cokernel(const AbHom& f) {
  const FgAbelianGroup& b = *f.codomain();
  auto group = std::make_shared<const FgAbelianGroup>(b.relations().concat_columns(f.matrix()));
  return AbQuotient{group, AbHom(f.codomain(), group, IntMatrix::identity(b.generator_count()))};
}

std::optional<AbElement> rep_twist_conj_to_id_ab(const AbHom& phi, const AbHom& psi, const AbElement& g) {
  const AbHom diff = hom_difference(phi, psi);
  const FgAbelianGroup& a = *diff.domain();
  const std::size_t m = a.generator_count();
  auto sol = lattice_member(diff.matrix().concat_columns(diff.codomain()->relations()), diff.codomain()->lift(g));
  if (!sol) return std::nullopt;
  IntVector h(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(m));
  return a.canonical(h);
}

std::optional<std::vector<AbElement>> reps_reid_classes_ab(const AbHom& phi, const AbHom& psi,
                                                           const std::optional<Integer>& limit) {
  const AbHom diff = hom_difference(phi, psi);
  const AbQuotient coker = cokernel(diff);
  if (!coker.group->is_finite()) return std::nullopt;
  const FgAbelianGroup& g = *diff.codomain();
  std::vector<AbElement> reps;
  for (const auto& c : coker.group->enumerate(limit)) reps.push_back(g.canonical(coker.group->lift(c)));
  return reps;
}

}  // namespace reid

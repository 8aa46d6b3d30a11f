#include "reid/errors.hpp"
#include "reid/pcp.hpp"

#include <deque>

namespace reid {

// Builds an induced generating sequence by sifting candidates into per-depth
// slots, merging leading exponents with extended gcds, and feeding back the
// powers and conjugates that closure requires.
class IgsBuilder {
 public:
  IgsBuilder(PresentationPtr presentation, bool normal)
      : presentation_(std::move(presentation)), p_(*presentation_), normal_(normal), slots_(p_.size()) {}

  void add(const PcpElement& x) {
    inputs_.push_back(x);
    queue_.push_back(x);
  }

  Igs finish() {
    for (;;) {
      process();
      // Slots may have been replaced after a closure element was sifted, so
      // re-run every closure test against the final slots.
      for (const auto& x : inputs_) push_if_nontrivial(x);
      for (std::size_t d = 0; d < slots_.size(); ++d)
        if (slots_[d]) push_closure(d);
      std::deque<PcpElement> pending;
      for (auto& x : queue_)
        if (!sift(x).is_identity()) pending.push_back(std::move(x));
      queue_ = std::move(pending);
      if (queue_.empty()) break;
    }

    Igs out(presentation_);
    for (std::size_t d = 0; d < slots_.size(); ++d)
      if (slots_[d]) {
        out.elements_.push_back(*slots_[d]);
        out.depths_.push_back(d);
      }
    // canonical form: exponents at the depths of later members reduced
    for (std::size_t i = 0; i < out.elements_.size(); ++i)
      for (std::size_t j = i + 1; j < out.elements_.size(); ++j) {
        const std::size_t dj = out.depths_[j];
        Integer q = floor_div(out.elements_[i][dj], out.elements_[j][dj]);
        if (q != 0) out.elements_[i] = p_.multiply(out.elements_[i], p_.power(out.elements_[j], -q));
      }
    return out;
  }

 private:
  PcpElement sift(PcpElement x) const {
    for (;;) {
      auto d = x.depth();
      if (!d || !slots_[*d]) return x;
      const PcpElement& y = *slots_[*d];
      Integer q = floor_div(x[*d], y[*d]);
      if (q != 0) x = p_.multiply(p_.power(y, -q), x);
      if (x[*d] != 0) return x;
    }
  }

  void push_if_nontrivial(const PcpElement& x) {
    if (!x.is_identity()) queue_.push_back(x);
  }

  void process() {
    while (!queue_.empty()) {
      PcpElement x = sift(std::move(queue_.front()));
      queue_.pop_front();
      if (x.is_identity()) continue;
      const std::size_t d = *x.depth();
      const Integer& r = p_.relative_order(d);
      if (!slots_[d]) {
        PcpElement z = x;
        if (r == 0) {
          if (x[d] < 0) z = p_.invert(x);
        } else {
          ExtendedGcd eg = extended_gcd(x[d], r);
          if (eg.g != x[d]) {
            z = p_.power(x, eg.s);
            queue_.push_back(x);
          }
        }
        install(d, std::move(z));
      } else {
        PcpElement y = *slots_[d];
        ExtendedGcd eg = extended_gcd(y[d], x[d]);
        PcpElement z = p_.multiply(p_.power(y, eg.s), p_.power(x, eg.t));
        if (r == 0 && z[d] < 0) z = p_.invert(z);
        queue_.push_back(y);
        queue_.push_back(x);
        install(d, std::move(z));
      }
    }
  }

  void install(std::size_t d, PcpElement z) {
    slots_[d] = std::move(z);
    push_closure(d);
  }

  void push_closure(std::size_t d) {
    const PcpElement& z = *slots_[d];
    const Integer& r = p_.relative_order(d);
    if (r != 0) push_if_nontrivial(p_.power(z, r / z[d]));
    for (std::size_t e = 0; e < slots_.size(); ++e) {
      if (e == d || !slots_[e]) continue;
      const PcpElement& y = *slots_[e];
      const auto& [lo, hi, lo_depth] = e < d ? std::tie(y, z, e) : std::tie(z, y, d);
      push_if_nontrivial(p_.conjugate(hi, lo));
      if (!p_.has_finite_order(lo_depth)) push_if_nontrivial(p_.conjugate(hi, p_.invert(lo)));
    }
    if (normal_) {
      for (std::size_t k = 0; k < p_.size(); ++k) {
        push_if_nontrivial(p_.conjugate(z, p_.generator(k)));
        if (!p_.has_finite_order(k)) push_if_nontrivial(p_.conjugate(z, p_.invert(p_.generator(k))));
      }
    }
  }

  PresentationPtr presentation_;
  const PcpPresentation& p_;
  bool normal_;
  std::vector<std::optional<PcpElement>> slots_;
  std::deque<PcpElement> queue_;
  std::vector<PcpElement> inputs_;
};

Igs Igs::generated_by(PresentationPtr presentation, const std::vector<PcpElement>& generators) {
  IgsBuilder b(std::move(presentation), false);
  for (const auto& g : generators) b.add(g);
  return b.finish();
}

IntVector Igs::relative_orders() const {
  IntVector r(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Integer& rd = presentation_->relative_order(depths_[i]);
    r[i] = rd == 0 ? Integer(0) : Integer(rd / elements_[i][depths_[i]]);
  }
  return r;
}

namespace {

struct SiftOutcome {
  PcpElement residue;
  IntVector coefficients;
};

SiftOutcome sift_recording(const Igs& s, PcpElement x) {
  const PcpPresentation& p = *s.presentation();
  SiftOutcome out{{}, IntVector(s.size())};
  std::size_t i = 0;
  for (;;) {
    auto d = x.depth();
    if (!d) break;
    while (i < s.size() && s.depths()[i] < *d) ++i;
    if (i == s.size() || s.depths()[i] != *d) break;
    const PcpElement& y = s.elements()[i];
    Integer q = floor_div(x[*d], y[*d]);
    if (q != 0) x = p.multiply(p.power(y, -q), x);
    out.coefficients[i] = q;
    if (x[*d] != 0) break;
  }
  out.residue = std::move(x);
  return out;
}

}  // namespace

PcpElement Igs::sift(const PcpElement& x) const { return sift_recording(*this, x).residue; }

std::optional<IntVector> Igs::express(const PcpElement& x) const {
  auto r = sift_recording(*this, x);
  if (!r.residue.is_identity()) return std::nullopt;
  return std::move(r.coefficients);
}

PcpElement Igs::embed(const IntVector& coefficients) const {
  if (coefficients.size() != elements_.size()) throw std::invalid_argument("Igs::embed: coefficient count mismatch");
  const PcpPresentation& p = *presentation_;
  PcpElement x = p.identity();
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (coefficients[i] != 0) x = p.multiply(x, p.power(elements_[i], coefficients[i]));
  return x;
}

Igs normal_closure(const PresentationPtr& presentation, const std::vector<PcpElement>& generators) {
  IgsBuilder b(presentation, true);
  for (const auto& g : generators) b.add(g);
  return b.finish();
}

Igs derived_subgroup(const PresentationPtr& presentation) {
  const PcpPresentation& p = *presentation;
  std::vector<PcpElement> commutators;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      auto c = p.commutator(p.generator(i), p.generator(j));
      if (!c.is_identity()) commutators.push_back(std::move(c));
    }
  return normal_closure(presentation, commutators);
}

std::size_t derived_length(const PresentationPtr& presentation) {
  std::size_t length = 0;
  PresentationPtr current = presentation;
  while (current->size() > 0) {
    current = induced_presentation(derived_subgroup(current)).presentation();
    ++length;
  }
  return length;
}

// ---------------------------------------------------------------------------

InducedPresentation::InducedPresentation(Igs subgroup) : subgroup_(std::move(subgroup)) {
  const PcpPresentation& p = *subgroup_.presentation();
  const auto& xs = subgroup_.elements();
  const std::size_t m = xs.size();
  const IntVector orders = subgroup_.relative_orders();

  auto word_of = [&](const PcpElement& y, const char* what) {
    auto c = subgroup_.express(y);
    if (!c) throw PresentationError(std::string("induced presentation: ") + what + " not in subgroup");
    Word w;
    for (std::size_t i = 0; i < m; ++i)
      if ((*c)[i] != 0) w.push_back({i, (*c)[i]});
    return w;
  };

  PcpBuilder b(m);
  for (std::size_t i = 0; i < m; ++i) {
    b.relative_order(i, orders[i]);
    if (orders[i] != 0) b.power(i, word_of(p.power(xs[i], orders[i]), "power"));
    for (std::size_t j = i + 1; j < m; ++j) {
      b.conjugate(j, i, word_of(p.conjugate(xs[j], xs[i]), "conjugate"));
      if (orders[i] == 0) b.inverse_conjugate(j, i, word_of(p.conjugate(xs[j], p.invert(xs[i])), "conjugate"));
    }
  }
  presentation_ = b.build(ConsistencyCheck::skip);
}

std::optional<PcpElement> InducedPresentation::express(const PcpElement& x) const {
  auto c = subgroup_.express(x);
  if (!c) return std::nullopt;
  return PcpElement(std::move(*c));
}

InducedPresentation induced_presentation(const Igs& subgroup) { return InducedPresentation(subgroup); }

// ---------------------------------------------------------------------------

namespace {

PcpElement evaluate(const PcpPresentation& codomain, const std::vector<PcpElement>& images, const PcpElement& x) {
  PcpElement y = codomain.identity();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y = codomain.multiply(y, codomain.power(images[i], x[i]));
  return y;
}

}  // namespace

GroupMorphism::GroupMorphism(PresentationPtr domain, PresentationPtr codomain, std::vector<PcpElement> images,
                             MorphismCheck check)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_->size())
    throw MorphismError("expected " + std::to_string(domain_->size()) + " generator images, got " +
                        std::to_string(images_.size()));
  for (const auto& y : images_)
    if (y.size() != codomain_->size()) throw MorphismError("generator image has wrong length");
  switch (check) {
    case MorphismCheck::verify:
      if (!verify_morphism(*domain_, *codomain_, images_))
        throw MorphismError("generator images do not respect the defining relations");
      verified_ = true;
      break;
    case MorphismCheck::trusted:
      verified_ = true;
      break;
    case MorphismCheck::skip:
      break;
  }
}

GroupMorphism GroupMorphism::identity(const PresentationPtr& group) {
  std::vector<PcpElement> images;
  for (std::size_t i = 0; i < group->size(); ++i) images.push_back(group->generator(i));
  return GroupMorphism(group, group, std::move(images), MorphismCheck::trusted);
}

PcpElement GroupMorphism::apply(const PcpElement& x) const {
  if (x.size() != domain_->size()) throw std::invalid_argument("GroupMorphism::apply: element from another group");
  return evaluate(*codomain_, images_, x);
}

bool verify_morphism(const PcpPresentation& domain, const PcpPresentation& codomain,
                     const std::vector<PcpElement>& images) {
  if (images.size() != domain.size()) return false;
  const std::size_t n = domain.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (domain.has_finite_order(i) &&
        codomain.power(images[i], domain.relative_order(i)) != evaluate(codomain, images, domain.power_relation(i)))
      return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (codomain.conjugate(images[j], images[i]) != evaluate(codomain, images, domain.conjugate_relation(j, i)))
        return false;
      if (!domain.has_finite_order(i) &&
          codomain.conjugate(images[j], codomain.invert(images[i])) !=
              evaluate(codomain, images, domain.conjugate_relation(j, i, true)))
        return false;
    }
  }
  return true;
}

GroupMorphism compose_with_inner(const GroupMorphism& phi, const PcpElement& g) {
  const PcpPresentation& c = *phi.codomain();
  const PcpElement g_inv = c.invert(g);
  std::vector<PcpElement> images;
  images.reserve(phi.images().size());
  for (const auto& y : phi.images()) images.push_back(c.multiply(c.multiply(g, y), g_inv));
  return GroupMorphism(phi.domain(), phi.codomain(), std::move(images),
                       phi.verified() ? MorphismCheck::trusted : MorphismCheck::skip);
}

GroupMorphism restrict_morphism(const GroupMorphism& phi, const InducedPresentation& subgroup) {
  if (phi.domain() != subgroup.ambient() || phi.codomain() != subgroup.ambient())
    throw std::invalid_argument("restrict_morphism: subgroup lives in another group");
  std::vector<PcpElement> images;
  for (const auto& x : subgroup.subgroup().elements()) {
    auto y = subgroup.express(phi.apply(x));
    if (!y) throw NotInvariantError();
    images.push_back(std::move(*y));
  }
  return GroupMorphism(subgroup.presentation(), subgroup.presentation(), std::move(images),
                       phi.verified() ? MorphismCheck::trusted : MorphismCheck::skip);
}

}  // namespace reid

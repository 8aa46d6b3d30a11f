#include "reid/twisted.hpp"

#include "reid/errors.hpp"

#include <stdexcept>

namespace reid {

EndoPair::EndoPair(GroupMorphism phi, GroupMorphism psi) : phi_(std::move(phi)), psi_(std::move(psi)) {
  if (!phi_.is_endomorphism() || !psi_.is_endomorphism() || phi_.domain() != psi_.domain())
    throw MorphismError("endomorphism pair must act on a single group");
  if (!phi_.verified() || !psi_.verified()) throw MorphismError("endomorphism pair requires verified maps");
}

bool verify_witness(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2, const PcpElement& h) {
  const PcpPresentation& p = *pair.group();
  return p.multiply(p.multiply(pair.psi()(h), g2), p.invert(pair.phi()(h))) == g1;
}

struct TwistedSolver::Context {
  explicit Context(const Igs& n) : quotient(n), sub(n) {}

  AbelianQuotient quotient;
  InducedPresentation sub;
};

namespace {

struct InducedPair {
  AbHom phi;
  AbHom psi;
};

InducedPair induce(const EndoPair& pair, const AbelianQuotient& q) {
  return InducedPair{induce_on_quotient(pair.phi(), q), induce_on_quotient(pair.psi(), q)};
}

EndoPair restrict_pair(const EndoPair& pair, const InducedPresentation& sub) {
  return EndoPair(restrict_morphism(pair.phi(), sub), restrict_morphism(pair.psi(), sub));
}

}  // namespace

TwistedSolver::TwistedSolver(SolverOptions options) : options_(std::move(options)) {}
TwistedSolver::~TwistedSolver() = default;

const Igs& TwistedSolver::derived(const PresentationPtr& group) {
  auto it = derived_.find(group.get());
  if (it == derived_.end()) it = derived_.emplace(group.get(), std::make_pair(group, derived_subgroup(group))).first;
  return it->second.second;
}

const TwistedSolver::Context& TwistedSolver::context(const Igs& n) {
  auto& list = contexts_[n.presentation().get()];
  for (const auto& c : list)
    if (c->quotient.kernel() == n) return *c;
  list.push_back(std::make_unique<Context>(n));
  return *list.back();
}

std::vector<PcpElement> TwistedSolver::coincidence_lifts(const EndoPair& pair, const Context& ctx,
                                                         std::size_t level) {
  const InducedPair bar = induce(pair, ctx.quotient);
  const AbSubgroup coin = kernel(hom_difference(bar.phi, bar.psi));
  if (!coin.group->is_finite()) throw InfiniteCoincidenceError(level, coin.group->hirsch_length());
  std::vector<PcpElement> lifts;
  for (const auto& c : coin.group->enumerate(options_.max_enumeration))
    lifts.push_back(ctx.quotient.section(coin.embedding.apply(c)));
  return lifts;
}

TwistedResult TwistedSolver::to_id(const EndoPair& pair, const PcpElement& g, std::size_t level) {
  const Igs& d = derived(pair.group());
  if (!d.is_trivial()) return to_id_by_normal(pair, g, d, level);

  const Context& ctx = context(d);
  const InducedPair bar = induce(pair, ctx.quotient);
  auto h = rep_twist_conj_to_id_ab(bar.phi, bar.psi, ctx.quotient.project(g));
  if (!h) return TwistedResult::not_conjugate();
  return TwistedResult::witness(ctx.quotient.section(*h));
}

TwistedResult TwistedSolver::to_id_by_normal(const EndoPair& pair, const PcpElement& g, const Igs& n,
                                             std::size_t level) {
  const PcpPresentation& p = *pair.group();
  const Context& ctx = context(n);
  const InducedPair bar = induce(pair, ctx.quotient);
  auto k_bar = rep_twist_conj_to_id_ab(bar.phi, bar.psi, ctx.quotient.project(g));
  if (!k_bar) return TwistedResult::not_conjugate();

  const PcpElement k = ctx.quotient.section(*k_bar);
  const PcpElement m = p.multiply(p.multiply(p.invert(pair.psi()(k)), g), pair.phi()(k));
  const EndoPair sub_pair = restrict_pair(pair, ctx.sub);

  for (const auto& h : coincidence_lifts(pair, ctx, level)) {
    const PcpElement x = p.multiply(p.multiply(p.invert(pair.psi()(h)), m), pair.phi()(h));
    auto x_sub = ctx.sub.express(x);
    if (!x_sub) throw std::logic_error("twisted conjugacy: pulled-back element left the normal subgroup");
    TwistedResult l = to_id(sub_pair, *x_sub, level + 1);
    if (l) return TwistedResult::witness(p.multiply(p.multiply(k, h), ctx.sub.embed(l.witness())));
  }
  return TwistedResult::not_conjugate();
}

TwistedResult TwistedSolver::twist_conj(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2,
                                        std::size_t level) {
  const PcpPresentation& p = *pair.group();
  const EndoPair twisted(compose_with_inner(pair.phi(), g2), pair.psi());
  return to_id(twisted, p.multiply(g1, p.invert(g2)), level);
}

ReidemeisterResult TwistedSolver::classes(const EndoPair& pair, std::size_t level) {
  const Igs& d = derived(pair.group());
  if (!d.is_trivial()) return classes_by_normal(pair, d, level);

  const Context& ctx = context(d);
  const InducedPair bar = induce(pair, ctx.quotient);
  auto reps = reps_reid_classes_ab(bar.phi, bar.psi, options_.max_enumeration);
  if (!reps) return ReidemeisterResult::infinite();
  std::vector<PcpElement> out;
  for (const auto& r : *reps) out.push_back(ctx.quotient.section(r));
  return ReidemeisterResult::finite(std::move(out));
}

ReidemeisterResult TwistedSolver::classes_by_normal(const EndoPair& pair, const Igs& n, std::size_t level) {
  const PcpPresentation& p = *pair.group();
  const Context& ctx = context(n);
  const InducedPair bar = induce(pair, ctx.quotient);
  auto quotient_reps = reps_reid_classes_ab(bar.phi, bar.psi, options_.max_enumeration);
  if (!quotient_reps) return ReidemeisterResult::infinite();

  std::vector<PcpElement> out;
  for (const auto& r : *quotient_reps) {
    const PcpElement g = ctx.quotient.section(r);
    const EndoPair twisted(compose_with_inner(pair.phi(), g), pair.psi());
    const ReidemeisterResult sub = classes(restrict_pair(twisted, ctx.sub), level + 1);
    if (!sub.is_finite()) return ReidemeisterResult::infinite();

    std::vector<PcpElement> kept;
    for (const auto& s : sub.representatives()) {
      const PcpElement h = ctx.sub.embed(s);
      bool fresh = true;
      for (const auto& k : kept)
        if (twist_conj(twisted, h, k, level)) {
          fresh = false;
          break;
        }
      if (fresh) kept.push_back(h);
    }
    for (const auto& h : kept) out.push_back(p.multiply(h, g));
  }
  return ReidemeisterResult::finite(std::move(out));
}

TwistedResult TwistedSolver::rep_twist_conj(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2) {
  TwistedResult r = twist_conj(pair, g1, g2, 0);
  if (r && !verify_witness(pair, g1, g2, r.witness()))
    throw std::logic_error("twisted conjugacy: witness failed verification");
  return r;
}

TwistedResult TwistedSolver::rep_twist_conj_to_id(const EndoPair& pair, const PcpElement& g) {
  return to_id(pair, g, 0);
}

TwistedResult TwistedSolver::rep_twist_conj_to_id_by_normal(const EndoPair& pair, const PcpElement& g,
                                                            const Igs& n) {
  if (n.presentation() != pair.group()) throw std::invalid_argument("normal subgroup of a different group");
  return to_id_by_normal(pair, g, n, 0);
}

ReidemeisterResult TwistedSolver::reps_reid_classes(const EndoPair& pair) { return classes(pair, 0); }

ReidemeisterResult TwistedSolver::reps_reid_classes_by_normal(const EndoPair& pair, const Igs& n) {
  if (n.presentation() != pair.group()) throw std::invalid_argument("normal subgroup of a different group");
  return classes_by_normal(pair, n, 0);
}

std::optional<std::size_t> TwistedSolver::reidemeister_number(const EndoPair& pair) {
  return reps_reid_classes(pair).number();
}

std::vector<PcpElement> TwistedSolver::coincidence_quotient_enum(const EndoPair& pair, const Igs& n) {
  if (n.presentation() != pair.group()) throw std::invalid_argument("normal subgroup of a different group");
  return coincidence_lifts(pair, context(n), 0);
}

TwistedResult rep_twist_conj(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2) {
  return TwistedSolver().rep_twist_conj(pair, g1, g2);
}

TwistedResult rep_twist_conj_to_id(const EndoPair& pair, const PcpElement& g) {
  return TwistedSolver().rep_twist_conj_to_id(pair, g);
}

TwistedResult rep_twist_conj_to_id_by_normal(const EndoPair& pair, const PcpElement& g, const Igs& n) {
  return TwistedSolver().rep_twist_conj_to_id_by_normal(pair, g, n);
}

ReidemeisterResult reps_reid_classes(const EndoPair& pair) { return TwistedSolver().reps_reid_classes(pair); }

ReidemeisterResult reps_reid_classes_by_normal(const EndoPair& pair, const Igs& n) {
  return TwistedSolver().reps_reid_classes_by_normal(pair, n);
}

std::optional<std::size_t> reidemeister_number(const EndoPair& pair) {
  return TwistedSolver().reidemeister_number(pair);
}

std::vector<PcpElement> coincidence_quotient_enum(const EndoPair& pair, const Igs& n) {
  return TwistedSolver().coincidence_quotient_enum(pair, n);
}

}  // namespace reid

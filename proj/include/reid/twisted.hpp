#pragma once

// Twisted conjugacy and Reidemeister classes of endomorphism pairs on
// polycyclic groups. Elements g1, g2 are (phi, psi)-twisted conjugate when
// g1 = psi(h) g2 phi(h)^-1 for some h.

#include "reid/pcp.hpp"
#include "reid/pcp_quotient.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace reid {

class EndoPair {
 public:
  /// Both maps must be verified endomorphisms of one group.
  EndoPair(GroupMorphism phi, GroupMorphism psi);

  const GroupMorphism& phi() const { return phi_; }
  const GroupMorphism& psi() const { return psi_; }
  const PresentationPtr& group() const { return phi_.domain(); }

 private:
  GroupMorphism phi_;
  GroupMorphism psi_;
};

class TwistedResult {
 public:
  static TwistedResult witness(PcpElement h) { return TwistedResult(std::move(h)); }
  static TwistedResult not_conjugate() { return TwistedResult(std::nullopt); }

  bool is_conjugate() const { return witness_.has_value(); }
  explicit operator bool() const { return is_conjugate(); }
  const PcpElement& witness() const { return witness_.value(); }

 private:
  explicit TwistedResult(std::optional<PcpElement> h) : witness_(std::move(h)) {}
  std::optional<PcpElement> witness_;
};

class ReidemeisterResult {
 public:
  static ReidemeisterResult finite(std::vector<PcpElement> reps) { return ReidemeisterResult(std::move(reps)); }
  static ReidemeisterResult infinite() { return ReidemeisterResult(std::nullopt); }

  bool is_finite() const { return reps_.has_value(); }
  const std::vector<PcpElement>& representatives() const { return reps_.value(); }
  /// Number of classes; nothing when there are infinitely many.
  std::optional<std::size_t> number() const {
    return reps_ ? std::optional<std::size_t>(reps_->size()) : std::nullopt;
  }

 private:
  explicit ReidemeisterResult(std::optional<std::vector<PcpElement>> reps) : reps_(std::move(reps)) {}
  std::optional<std::vector<PcpElement>> reps_;
};

/// g1 == psi(h) * g2 * phi(h)^-1
bool verify_witness(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2, const PcpElement& h);

struct SolverOptions {
  /// Cap on every finite enumeration (coincidence groups, quotient classes).
  std::optional<Integer> max_enumeration;
};

/// Runs the algorithms, caching derived subgroups, quotients and induced
/// presentations per group so repeated queries share them.
class TwistedSolver {
 public:
  explicit TwistedSolver(SolverOptions options = {});
  ~TwistedSolver();
  TwistedSolver(const TwistedSolver&) = delete;
  TwistedSolver& operator=(const TwistedSolver&) = delete;

  TwistedResult rep_twist_conj(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2);
  TwistedResult rep_twist_conj_to_id(const EndoPair& pair, const PcpElement& g);
  TwistedResult rep_twist_conj_to_id_by_normal(const EndoPair& pair, const PcpElement& g, const Igs& n);

  ReidemeisterResult reps_reid_classes(const EndoPair& pair);
  ReidemeisterResult reps_reid_classes_by_normal(const EndoPair& pair, const Igs& n);
  std::optional<std::size_t> reidemeister_number(const EndoPair& pair);

  /// One lift in G of each element of Coin on G/N.
  std::vector<PcpElement> coincidence_quotient_enum(const EndoPair& pair, const Igs& n);

 private:
  struct Context;

  const Igs& derived(const PresentationPtr& group);
  const Context& context(const Igs& n);

  TwistedResult to_id(const EndoPair& pair, const PcpElement& g, std::size_t level);
  TwistedResult to_id_by_normal(const EndoPair& pair, const PcpElement& g, const Igs& n, std::size_t level);
  TwistedResult twist_conj(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2, std::size_t level);
  ReidemeisterResult classes(const EndoPair& pair, std::size_t level);
  ReidemeisterResult classes_by_normal(const EndoPair& pair, const Igs& n, std::size_t level);
  std::vector<PcpElement> coincidence_lifts(const EndoPair& pair, const Context& ctx, std::size_t level);

  SolverOptions options_;
  std::map<const PcpPresentation*, std::pair<PresentationPtr, Igs>> derived_;
  std::map<const PcpPresentation*, std::vector<std::unique_ptr<Context>>> contexts_;
};

TwistedResult rep_twist_conj(const EndoPair& pair, const PcpElement& g1, const PcpElement& g2);
TwistedResult rep_twist_conj_to_id(const EndoPair& pair, const PcpElement& g);
TwistedResult rep_twist_conj_to_id_by_normal(const EndoPair& pair, const PcpElement& g, const Igs& n);
ReidemeisterResult reps_reid_classes(const EndoPair& pair);
ReidemeisterResult reps_reid_classes_by_normal(const EndoPair& pair, const Igs& n);
std::optional<std::size_t> reidemeister_number(const EndoPair& pair);
std::vector<PcpElement> coincidence_quotient_enum(const EndoPair& pair, const Igs& n);

}  // namespace reid

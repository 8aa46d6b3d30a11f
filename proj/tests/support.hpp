#pragma once

// Example groups and helpers shared by the test binaries.

#include "reid/pcp.hpp"
#include "reid/twisted.hpp"

#include <random>
#include <utility>
#include <vector>

namespace reid::testing {

inline Word w(std::initializer_list<std::pair<std::size_t, long>> syllables) {
  Word out;
  for (auto [g, e] : syllables) out.push_back(Syllable{g - 1, Integer(e)});
  return out;
}

/// <a, b | a^2, b^3, b^a = b^2>
inline PresentationPtr s3() {
  PcpBuilder b(2);
  b.relative_order(0, 2).relative_order(1, 3);
  b.conjugate(1, 0, w({{2, 2}}));
  return b.build();
}

inline PresentationPtr cyclic(long n) {
  PcpBuilder b(1);
  b.relative_order(0, n);
  return b.build();
}

/// Four generators, g1 of order 2 with g1^2 = g4, g2 g3 g4 of infinite order,
/// g1 inverting g2 and g3, [g3, g2] = g4^2 and g4 central.
inline PresentationPtr example_group() {
  PcpBuilder b(4);
  b.relative_order(0, 2);
  b.power(0, w({{4, 1}}));
  b.conjugate(1, 0, w({{2, -1}}));
  b.conjugate(2, 0, w({{3, -1}}));
  b.conjugate(2, 1, w({{3, 1}, {4, 2}}));
  b.inverse_conjugate(2, 1, w({{3, 1}, {4, -2}}));
  return b.build();
}

struct ExampleMaps {
  PresentationPtr group;
  GroupMorphism phi;
  GroupMorphism psi;
};

inline ExampleMaps example_maps() {
  auto g = example_group();
  auto el = [&](Word x) { return g->collect(x); };
  GroupMorphism phi(g, g, {el(w({{1, 1}, {4, -1}})), el(w({{3, 1}})), el(w({{2, 1}, {3, 3}, {4, 3}})), el(w({{4, -1}}))});
  GroupMorphism psi(g, g, {el(w({{1, 1}})), el(w({{2, 2}, {3, 1}, {4, 2}})), el(w({{2, 1}, {3, 1}, {4, 1}})), el(w({{4, 1}}))});
  return ExampleMaps{g, phi, psi};
}

/// Integer in [lo, hi].
inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace reid::testing

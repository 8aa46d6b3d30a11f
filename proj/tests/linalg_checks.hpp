#pragma once

// Invariant checks for the normal forms and solvers, shared by the unit tests
// and the acceptance run. Each returns a list of violations.

#include "reid/intlinalg.hpp"

#include <random>
#include <string>
#include <vector>

namespace reid::testing {

/// Determinant by cofactor expansion; only for small matrices.
inline Integer laplace_determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = a(r, c);
    const Integer term = a(0, j) * laplace_determinant(minor);
    det += (j % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out,
                    std::vector<std::size_t>& cur, std::size_t start = 0) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

/// gcd of all k x k minors (the k-th determinantal divisor).
inline Integer determinantal_divisor(const IntMatrix& a, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(a.rows(), k, rs, cur);
  subsets(a.cols(), k, cs, cur);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      IntMatrix m(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = a(r[i], c[j]);
      const Integer d = laplace_determinant(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

/// Membership of v in the column lattice of a, decided by reducing against the
/// row-style Hermite form of a^T.
inline bool hermite_member(const IntMatrix& a, IntVector v) {
  const HermiteDecomposition h = hnf(a.transpose());
  for (std::size_t r = 0; r < h.rank; ++r) {
    std::size_t p = 0;
    while (h.H(r, p) == 0) ++p;
    if (!divides(h.H(r, p), v[p])) return false;
    const Integer q = v[p] / h.H(r, p);
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= q * h.H(r, c);
  }
  return is_zero(v);
}

inline bool unimodular(const IntMatrix& u) {
  return u.rows() == u.cols() && abs(determinant(u)) == 1;
}

inline std::vector<std::string> check_hermite(const IntMatrix& a) {
  std::vector<std::string> bad;
  const HermiteDecomposition h = hnf(a);
  if (h.U * a != h.H) bad.push_back("U*A != H");
  if (!unimodular(h.U)) bad.push_back("HNF transform not unimodular");
  std::size_t last_pivot = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::size_t p = 0;
    while (p < a.cols() && h.H(r, p) == 0) ++p;
    if (r >= h.rank) {
      if (p != a.cols()) bad.push_back("nonzero row past the rank");
      continue;
    }
    if (p == a.cols()) {
      bad.push_back("zero row inside the rank");
      continue;
    }
    if (r > 0 && p <= last_pivot) bad.push_back("pivots not strictly increasing");
    last_pivot = p;
    if (h.H(r, p) <= 0) bad.push_back("nonpositive pivot");
    for (std::size_t above = 0; above < r; ++above)
      if (h.H(above, p) < 0 || h.H(above, p) >= h.H(r, p)) bad.push_back("entry above pivot not reduced");
  }
  return bad;
}

inline std::vector<std::string> check_smith(const IntMatrix& a, bool with_minors) {
  std::vector<std::string> bad;
  const SmithDecomposition s = snf(a);
  if (s.U * a * s.V != s.S) bad.push_back("U*A*V != S");
  if (!unimodular(s.U) || !unimodular(s.V)) bad.push_back("SNF transform not unimodular");
  if (!s.S.is_diagonal()) bad.push_back("S not diagonal");
  const std::size_t k = std::min(a.rows(), a.cols());
  if (s.invariants.size() != k) bad.push_back("wrong number of invariants");
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < k && i < s.invariants.size(); ++i) {
    const Integer& d = s.invariants[i];
    if (d != s.S(i, i)) bad.push_back("invariants disagree with S");
    if (d < 0) bad.push_back("negative invariant");
    if (d != 0) ++nonzero;
    if (i + 1 < k && d == 0 && s.invariants[i + 1] != 0) bad.push_back("zero invariant before a nonzero one");
    if (i + 1 < k && d != 0 && !divides(d, s.invariants[i + 1])) bad.push_back("divisibility chain broken");
  }
  if (nonzero != s.rank) bad.push_back("rank disagrees with invariants");
  if (with_minors) {
    Integer prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      prod *= s.invariants[i];
      if (determinantal_divisor(a, i + 1) != prod) {
        bad.push_back("invariants disagree with determinantal divisors");
        break;
      }
    }
  }
  return bad;
}

inline std::vector<std::string> check_solvers(const IntMatrix& a, std::mt19937_64& rng) {
  std::vector<std::string> bad;
  std::uniform_int_distribution<long> coeff(-20, 20);
  for (int t = 0; t < 3; ++t) {
    IntVector x0(a.cols());
    for (auto& x : x0) x = coeff(rng);
    const IntVector b = a * x0;
    auto x = solve(a, b);
    if (!x) bad.push_back("solve missed a solvable system");
    else if (a * *x != b) bad.push_back("solve returned a wrong solution");
    auto c = lattice_member(a, b);
    if (!c || a * *c != b) bad.push_back("lattice_member failed on a lattice vector");

    IntVector v = b;
    if (!v.empty()) v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)] += coeff(rng);
    const bool member = hermite_member(a, v);
    auto y = solve(a, v);
    if (y.has_value() != member) bad.push_back("solve disagrees with the Hermite membership oracle");
    if (y && a * *y != v) bad.push_back("solve returned a wrong solution for a perturbed vector");
  }
  const IntMatrix k = kernel_basis(a);
  const std::size_t rank = snf(a).rank;
  if (k.rows() != a.cols() || k.cols() != a.cols() - rank) bad.push_back("kernel basis has the wrong size");
  if (!(a * k).is_zero()) bad.push_back("kernel basis not in the kernel");
  for (const auto& d : snf(k).invariants)
    if (d != 1) {
      bad.push_back("kernel basis spans a proper sublattice of the kernel");
      break;
    }
  return bad;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long bound) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(-bound, bound);
  IntMatrix a(dim(rng), dim(rng));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
  // lower the rank now and then: repeat or zero some rows
  switch (rng() % 4) {
    case 0:
      if (a.rows() > 1)
        for (std::size_t j = 0; j < a.cols(); ++j) a(a.rows() - 1, j) = a(0, j);
      break;
    case 1: {
      const std::size_t r = rng() % a.rows();
      for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = 0;
      break;
    }
    default:
      break;
  }
  return a;
}

}  // namespace reid::testing

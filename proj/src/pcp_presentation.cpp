#include "reid/errors.hpp"
#include "reid/pcp.hpp"

#include <sstream>

namespace reid {

std::optional<std::size_t> PcpElement::depth() const {
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] != 0) return i;
  return std::nullopt;
}

const Integer& PcpElement::leading_exponent() const {
  static const Integer zero = 0;
  auto d = depth();
  return d ? exponents_[*d] : zero;
}

bool operator<(const PcpElement& a, const PcpElement& b) {
  return std::lexicographical_compare(a.exponents_.begin(), a.exponents_.end(), b.exponents_.begin(),
                                      b.exponents_.end());
}

std::size_t PcpElementHash::operator()(const PcpElement& x) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& e : x.exponents()) {
    h ^= static_cast<std::size_t>(mpz_get_si(e.get_mpz_t()));
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------

PcpBuilder::PcpBuilder(std::size_t generators)
    : relative_orders_(generators),
      powers_(generators),
      conjugates_(generators, std::vector<Word>(generators)),
      inverse_conjugates_(generators, std::vector<Word>(generators)),
      conjugate_set_(generators, std::vector<bool>(generators)),
      inverse_conjugate_set_(generators, std::vector<bool>(generators)) {}

namespace {

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) throw PresentationError("generator index " + std::to_string(i + 1) + " out of range");
}

void check_word_above(const Word& w, std::size_t i, std::size_t n, const std::string& what) {
  for (const auto& s : w) {
    if (s.generator >= n)
      throw PresentationError(what + ": generator index " + std::to_string(s.generator + 1) + " out of range");
    if (s.generator <= i)
      throw PresentationError(what + ": right-hand side uses generator g" + std::to_string(s.generator + 1) +
                              ", must only use generators after g" + std::to_string(i + 1));
  }
}

}  // namespace

PcpBuilder& PcpBuilder::relative_order(std::size_t i, Integer order) {
  check_index(i, size());
  if (order < 0 || order == 1)
    throw PresentationError("relative order of g" + std::to_string(i + 1) + " must be 0 (infinite) or >= 2");
  relative_orders_[i] = std::move(order);
  return *this;
}

PcpBuilder& PcpBuilder::power(std::size_t i, Word rhs) {
  check_index(i, size());
  check_word_above(rhs, i, size(), "power relation of g" + std::to_string(i + 1));
  powers_[i] = std::move(rhs);
  return *this;
}

PcpBuilder& PcpBuilder::conjugate(std::size_t j, std::size_t i, Word rhs) {
  check_index(j, size());
  if (i >= j) throw PresentationError("conjugate relation g_j^g_i needs i < j");
  check_word_above(rhs, i, size(),
                   "conjugate relation g" + std::to_string(j + 1) + "^g" + std::to_string(i + 1));
  conjugates_[i][j] = std::move(rhs);
  conjugate_set_[i][j] = true;
  return *this;
}

PcpBuilder& PcpBuilder::inverse_conjugate(std::size_t j, std::size_t i, Word rhs) {
  check_index(j, size());
  if (i >= j) throw PresentationError("conjugate relation g_j^(g_i^-1) needs i < j");
  check_word_above(rhs, i, size(),
                   "conjugate relation g" + std::to_string(j + 1) + "^(g" + std::to_string(i + 1) + "^-1)");
  inverse_conjugates_[i][j] = std::move(rhs);
  inverse_conjugate_set_[i][j] = true;
  return *this;
}

PresentationPtr PcpBuilder::build(ConsistencyCheck check) const {
  const std::size_t n = size();
  auto p = std::shared_ptr<PcpPresentation>(new PcpPresentation());
  p->relative_orders_ = relative_orders_;
  p->powers_.assign(n, p->identity());
  p->conjugates_.assign(n, std::vector<PcpElement>(n));
  p->inverse_conjugates_.assign(n, std::vector<PcpElement>(n));
  p->acts_trivially_.assign(n, true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      p->conjugates_[i][j] = p->generator(j);
      p->inverse_conjugates_[i][j] = p->generator(j);
    }

  // Relations of g_i only involve later generators, so filling from the
  // bottom up means every word is collected with already-complete data.
  for (std::size_t i = n; i-- > 0;) {
    if (relative_orders_[i] != 0) {
      p->powers_[i] = p->collect(powers_[i]);
    } else if (!powers_[i].empty()) {
      throw PresentationError("power relation given for g" + std::to_string(i + 1) + " of infinite order");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (conjugate_set_[i][j]) p->conjugates_[i][j] = p->collect(conjugates_[i][j]);
      if (inverse_conjugate_set_[i][j]) {
        if (relative_orders_[i] != 0)
          throw PresentationError("inverse conjugate relation given for g" + std::to_string(i + 1) +
                                  " of finite order");
        p->inverse_conjugates_[i][j] = p->collect(inverse_conjugates_[i][j]);
      } else if (relative_orders_[i] == 0 && p->conjugates_[i][j] != p->generator(j)) {
        throw PresentationError("missing relation for g" + std::to_string(j + 1) + "^(g" + std::to_string(i + 1) +
                                "^-1)");
      }
      if (p->conjugates_[i][j] != p->generator(j) || p->inverse_conjugates_[i][j] != p->generator(j))
        p->acts_trivially_[i] = false;
    }
  }

  if (check == ConsistencyCheck::run) {
    auto violations = p->consistency_violations();
    if (!violations.empty()) {
      std::string msg = "inconsistent presentation: " + violations.front();
      if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
      throw PresentationError(msg);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------

bool PcpPresentation::is_finite() const {
  for (const auto& r : relative_orders_)
    if (r == 0) return false;
  return true;
}

Integer PcpPresentation::order() const {
  if (!is_finite()) throw InfiniteGroupError("order of an infinite group");
  Integer o = 1;
  for (const auto& r : relative_orders_) o *= r;
  return o;
}

PcpElement PcpPresentation::generator(std::size_t i) const {
  IntVector e(size());
  e.at(i) = 1;
  return PcpElement(std::move(e));
}

PcpElement PcpPresentation::element(const IntVector& exponents) const {
  if (exponents.size() != size()) throw std::invalid_argument("exponent vector has wrong length");
  IntVector x(size());
  for (std::size_t k = 0; k < size(); ++k)
    if (exponents[k] != 0) multiply_generator_power(x, k, exponents[k]);
  return PcpElement(std::move(x));
}

PcpElement PcpPresentation::collect(const Word& w) const {
  IntVector x(size());
  for (const auto& s : w) {
    if (s.generator >= size()) throw std::invalid_argument("word uses generator out of range");
    if (s.exponent != 0) multiply_generator_power(x, s.generator, s.exponent);
  }
  return PcpElement(std::move(x));
}

PcpElement PcpPresentation::multiply(const PcpElement& a, const PcpElement& b) const {
  return PcpElement(multiply_vectors(a.exponents(), b.exponents()));
}

PcpElement PcpPresentation::invert(const PcpElement& a) const { return PcpElement(invert_vector(a.exponents())); }

PcpElement PcpPresentation::power(const PcpElement& a, const Integer& e) const {
  return PcpElement(power_vector(a.exponents(), e));
}

PcpElement PcpPresentation::conjugate(const PcpElement& x, const PcpElement& by) const {
  return multiply(multiply(invert(by), x), by);
}

PcpElement PcpPresentation::commutator(const PcpElement& a, const PcpElement& b) const {
  return multiply(multiply(invert(a), invert(b)), multiply(a, b));
}

const PcpElement& PcpPresentation::conjugate_relation(std::size_t j, std::size_t i, bool inverse) const {
  if (i >= j || j >= size()) throw std::out_of_range("conjugate_relation needs i < j < n");
  return inverse ? inverse_conjugates_[i][j] : conjugates_[i][j];
}

IntVector PcpPresentation::multiply_vectors(IntVector a, const IntVector& b) const {
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b[k] != 0) multiply_generator_power(a, k, b[k]);
  return a;
}

IntVector PcpPresentation::invert_vector(const IntVector& a) const {
  IntVector x(size());
  for (std::size_t k = size(); k-- > 0;)
    if (a[k] != 0) multiply_generator_power(x, k, -a[k]);
  return x;
}

IntVector PcpPresentation::power_vector(const IntVector& a, Integer e) const {
  IntVector base = e < 0 ? invert_vector(a) : a;
  if (e < 0) e = -e;
  IntVector result(size());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = multiply_vectors(std::move(result), base);
    e >>= 1;
    if (e > 0) base = multiply_vectors(base, base);
  }
  return result;
}

// Collection from the left. Writing x = u * g_k^{x_k} * w with w in
// <g_{k+1},...>, we use w * g_k^e = g_k^e * w^{g_k^e}; the tail product is
// computed recursively and only involves generators after k.
void PcpPresentation::multiply_generator_power(IntVector& x, std::size_t k, const Integer& e) const {
  if (e == 0) return;
  const std::size_t n = size();
  const Integer& r = relative_orders_[k];

  if (r != 0 && e < 0) {
    // g_k^e = g_k^{e mod r} * (g_k^r)^{e div r}
    multiply_generator_power(x, k, floor_mod(e, r));
    IntVector p = power_vector(powers_[k].exponents(), floor_div(e, r));
    x = multiply_vectors(std::move(x), p);
    return;
  }

  IntVector tail(n);
  bool tail_trivial = true;
  for (std::size_t j = k + 1; j < n; ++j) {
    if (x[j] != 0) tail_trivial = false;
    swap(tail[j], x[j]);
  }
  if (!tail_trivial && !acts_trivially_[k]) {
    const int sign = e > 0 ? 1 : -1;
    for (Integer t = abs(e); t > 0; --t) conjugate_tail(tail, k, sign);
  }

  if (r == 0) {
    x[k] += e;
  } else {
    Integer total = x[k] + e;
    x[k] = floor_mod(total, r);
    Integer q = floor_div(total, r);
    if (q != 0 && !powers_[k].is_identity())
      tail = multiply_vectors(power_vector(powers_[k].exponents(), q), tail);
  }
  for (std::size_t j = k + 1; j < n; ++j) swap(x[j], tail[j]);
}

void PcpPresentation::conjugate_tail(IntVector& y, std::size_t k, int sign) const {
  const auto& images = sign > 0 ? conjugates_[k] : inverse_conjugates_[k];
  IntVector result(size());
  for (std::size_t j = k + 1; j < size(); ++j) {
    if (y[j] == 0) continue;
    const PcpElement& c = images[j];
    // c == g_j in the common case
    bool is_generator = c[j] == 1;
    for (std::size_t l = k + 1; l < size() && is_generator; ++l)
      if (l != j && c[l] != 0) is_generator = false;
    if (is_generator)
      multiply_generator_power(result, j, y[j]);
    else
      result = multiply_vectors(std::move(result), power_vector(c.exponents(), y[j]));
  }
  y = std::move(result);
}

std::vector<std::string> PcpPresentation::consistency_violations() const {
  const std::size_t n = size();
  std::vector<std::string> out;
  auto gen = [&](std::size_t i, int s) {
    IntVector e(n);
    e[i] = s;
    return PcpElement(std::move(e));
  };
  auto g_inv = [&](std::size_t i) { return invert(generator(i)); };
  auto name = [](std::size_t i, int s) {
    return "g" + std::to_string(i + 1) + (s < 0 ? "^-1" : "");
  };
  auto signs = [&](std::size_t i) { return has_finite_order(i) ? std::vector<int>{1} : std::vector<int>{1, -1}; };

  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (int sk : signs(k))
          for (int sj : signs(j))
            for (int si : signs(i)) {
              auto a = gen(k, sk), b = gen(j, sj), c = gen(i, si);
              if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
                out.push_back("(" + name(k, sk) + " " + name(j, sj) + ") " + name(i, si) + " != " + name(k, sk) +
                              " (" + name(j, sj) + " " + name(i, si) + ")");
            }

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const auto gi = generator(i), gj = generator(j);
      if (has_finite_order(j)) {
        auto lhs = multiply(powers_[j], gi);
        auto rhs = multiply(power(gj, relative_orders_[j] - 1), multiply(gj, gi));
        if (lhs != rhs) out.push_back("g" + std::to_string(j + 1) + "^r g" + std::to_string(i + 1) + " overlap");
      }
      if (has_finite_order(i)) {
        auto lhs = multiply(gj, powers_[i]);
        auto rhs = multiply(multiply(gj, gi), power(gi, relative_orders_[i] - 1));
        if (lhs != rhs) out.push_back("g" + std::to_string(j + 1) + " g" + std::to_string(i + 1) + "^r overlap");
      } else {
        if (multiply(multiply(gj, g_inv(i)), gi) != gj || multiply(multiply(gj, gi), g_inv(i)) != gj)
          out.push_back("conjugation by g" + std::to_string(i + 1) + " on g" + std::to_string(j + 1) +
                        " is not inverted by its inverse relation");
      }
      if (!has_finite_order(j)) {
        if (multiply(g_inv(j), multiply(gj, gi)) != gi)
          out.push_back("g" + std::to_string(j + 1) + "^-1 (g" + std::to_string(j + 1) + " g" +
                        std::to_string(i + 1) + ") overlap");
        if (!has_finite_order(i) && multiply(g_inv(j), multiply(gj, g_inv(i))) != g_inv(i))
          out.push_back("g" + std::to_string(j + 1) + "^-1 (g" + std::to_string(j + 1) + " g" +
                        std::to_string(i + 1) + "^-1) overlap");
      }
    }

  for (std::size_t i = 0; i < n; ++i)
    if (has_finite_order(i) && multiply(generator(i), powers_[i]) != multiply(powers_[i], generator(i)))
      out.push_back("g" + std::to_string(i + 1) + " does not commute with its power relation");
  return out;
}

Word PcpPresentation::to_word(const PcpElement& x) const {
  Word w;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) w.push_back({i, x[i]});
  return w;
}

std::string PcpPresentation::format(const PcpElement& x) const {
  if (x.is_identity()) return "id";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << 'g' << (i + 1);
    if (x[i] != 1) os << '^' << x[i];
  }
  return os.str();
}

PcpBuilder PcpPresentation::to_builder() const {
  const std::size_t n = size();
  PcpBuilder b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.relative_order(i, relative_orders_[i]);
    if (has_finite_order(i) && !powers_[i].is_identity()) b.power(i, to_word(powers_[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (conjugates_[i][j] != generator(j)) b.conjugate(j, i, to_word(conjugates_[i][j]));
      if (!has_finite_order(i) && inverse_conjugates_[i][j] != generator(j))
        b.inverse_conjugate(j, i, to_word(inverse_conjugates_[i][j]));
    }
  }
  return b;
}

PresentationPtr PcpPresentation::trivial() { return PcpBuilder(0).build(); }

PresentationPtr PcpPresentation::free_abelian(std::size_t n) { return PcpBuilder(n).build(); }

}  // namespace reid

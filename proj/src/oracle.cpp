#include "reid/oracle.hpp"

#include "reid/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace reid {

namespace {

constexpr std::size_t kMaxTableOrder = 4096;

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Word shifted(const Word& w, std::size_t offset) {
  Word out;
  for (const auto& s : w) out.push_back(Syllable{s.generator + offset, s.exponent});
  return out;
}

}  // namespace

FiniteGroupTable::FiniteGroupTable(PresentationPtr presentation) : presentation_(std::move(presentation)) {
  const PcpPresentation& p = *presentation_;
  if (!p.is_finite()) throw InfiniteGroupError("cannot enumerate infinite group");
  const Integer total = p.order();
  if (total > kMaxTableOrder)
    throw EnumerationLimitError("group of order " + total.get_str() + " is too large for a multiplication table");
  const std::size_t n = p.size();
  const std::size_t count = total.get_ui();

  strides_.assign(n, Integer(1));
  for (std::size_t i = n; i-- > 1;) strides_[i - 1] = strides_[i] * p.relative_order(i);

  elements_.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    IntVector e(n);
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t s = strides_[i].get_ui();
      e[i] = rest / s;
      rest %= s;
    }
    elements_.emplace_back(std::move(e));
  }

  for (std::size_t k = 0; k < n; ++k) generators_.push_back(index_of(p.generator(k)));

  std::vector<std::uint32_t> right(count * n);
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t k = 0; k < n; ++k)
      right[x * n + k] = static_cast<std::uint32_t>(index_of(p.multiply(elements_[x], p.generator(k))));

  table_.resize(count * count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      std::size_t cur = a;
      for (std::size_t k = 0; k < n; ++k)
        for (unsigned long e = elements_[b][k].get_ui(); e > 0; --e) cur = right[cur * n + k];
      table_[a * count + b] = static_cast<std::uint32_t>(cur);
    }

  inverses_.resize(count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      if (multiply(a, b) == 0) {
        inverses_[a] = b;
        break;
      }
}

std::size_t FiniteGroupTable::index_of(const PcpElement& x) const {
  Integer idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx += x[i] * strides_[i];
  return idx.get_ui();
}

std::size_t FiniteGroupTable::evaluate(const std::vector<std::size_t>& images, const PcpElement& x) const {
  std::size_t cur = 0;
  for (std::size_t k = 0; k < x.size(); ++k)
    for (unsigned long e = x[k].get_ui(); e > 0; --e) cur = multiply(cur, images[k]);
  return cur;
}

FiniteGroupTable enumerate_group(const PresentationPtr& presentation) { return FiniteGroupTable(presentation); }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> image_indices(const GroupMorphism& f, const FiniteGroupTable& table) {
  std::vector<std::size_t> images;
  for (const auto& img : f.images()) images.push_back(table.index_of(img));
  return images;
}

}  // namespace

Partition brute_classes(const EndoPair& pair, const FiniteGroupTable& table) {
  if (pair.group() != table.presentation()) throw std::invalid_argument("brute_classes: table of another group");
  const std::size_t count = table.order();
  const std::size_t n = pair.group()->size();
  const auto phi = image_indices(pair.phi(), table);
  const auto psi = image_indices(pair.psi(), table);
  std::vector<std::size_t> phi_inv(n);
  for (std::size_t k = 0; k < n; ++k) phi_inv[k] = table.inverse(phi[k]);

  Partition part;
  part.class_of.assign(count, count);
  for (std::size_t start = 0; start < count; ++start) {
    if (part.class_of[start] != count) continue;
    const std::size_t c = part.classes.size();
    part.classes.emplace_back();
    std::deque<std::size_t> queue{start};
    part.class_of[start] = c;
    while (!queue.empty()) {
      const std::size_t g = queue.front();
      queue.pop_front();
      part.classes[c].push_back(g);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t y = table.multiply(table.multiply(psi[k], g), phi_inv[k]);
        if (part.class_of[y] == count) {
          part.class_of[y] = c;
          queue.push_back(y);
        }
      }
    }
    std::sort(part.classes[c].begin(), part.classes[c].end());
  }
  return part;
}

Partition brute_classes(const EndoPair& pair) { return brute_classes(pair, FiniteGroupTable(pair.group())); }

std::optional<PcpElement> brute_witness(const EndoPair& pair, const FiniteGroupTable& table, const PcpElement& g1,
                                        const PcpElement& g2) {
  const std::size_t a = table.index_of(g1);
  const std::size_t b = table.index_of(g2);
  const auto phi = image_indices(pair.phi(), table);
  const auto psi = image_indices(pair.psi(), table);
  for (std::size_t h = 0; h < table.order(); ++h) {
    const std::size_t ph = table.evaluate(phi, table.element(h));
    const std::size_t qh = table.evaluate(psi, table.element(h));
    if (table.multiply(table.multiply(qh, b), table.inverse(ph)) == a) return table.element(h);
  }
  return std::nullopt;
}

CompareReport compare(const EndoPair& pair, const FiniteGroupTable& table, TwistedSolver& solver,
                      std::mt19937_64& rng, std::size_t samples) {
  const PcpPresentation& p = *pair.group();
  CompareReport report;
  const Partition part = brute_classes(pair, table);
  report.brute_count = part.classes.size();
  auto fail = [&](const std::string& msg) { report.mismatches.push_back(msg); };

  try {
    const ReidemeisterResult res = solver.reps_reid_classes(pair);
    if (!res.is_finite()) {
      fail("algorithm reports infinitely many classes on a finite group");
    } else {
      report.algorithm_count = res.number();
      if (*report.algorithm_count != report.brute_count)
        fail("class count " + std::to_string(*report.algorithm_count) + " vs brute force " +
             std::to_string(report.brute_count));
      std::vector<bool> hit(part.classes.size(), false);
      for (const auto& r : res.representatives()) {
        const std::size_t c = part.class_of[table.index_of(r)];
        if (hit[c]) fail("representative " + p.format(r) + " shares its class with an earlier one");
        hit[c] = true;
      }
    }
  } catch (const std::exception& e) {
    fail(std::string("reps_reid_classes threw: ") + e.what());
  }

  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t a = pick(rng, table.order());
    std::size_t b = pick(rng, table.order());
    if (s % 2 == 0) {
      const auto& cls = part.classes[part.class_of[a]];
      b = cls[pick(rng, cls.size())];
    }
    const PcpElement& g1 = table.element(a);
    const PcpElement& g2 = table.element(b);
    const bool expected = part.class_of[a] == part.class_of[b];
    ++report.queries;
    try {
      const TwistedResult r = solver.rep_twist_conj(pair, g1, g2);
      if (r.is_conjugate() != expected)
        fail("conj(" + p.format(g1) + ", " + p.format(g2) + ") = " + (r ? "conjugate" : "not conjugate") +
             ", brute force disagrees");
      if (r) {
        ++report.witnesses_checked;
        if (!verify_witness(pair, g1, g2, r.witness()))
          fail("witness " + p.format(r.witness()) + " for (" + p.format(g1) + ", " + p.format(g2) + ") is wrong");
      }
    } catch (const std::exception& e) {
      fail("conj(" + p.format(g1) + ", " + p.format(g2) + ") threw: " + e.what());
    }
  }
  return report;
}

CompareReport compare(const EndoPair& pair, std::size_t samples, std::uint64_t seed) {
  FiniteGroupTable table(pair.group());
  TwistedSolver solver;
  std::mt19937_64 rng(seed);
  return compare(pair, table, solver, rng, samples);
}

// ---------------------------------------------------------------------------

std::optional<GroupMorphism> random_endomorphism(const FiniteGroupTable& table, std::mt19937_64& rng,
                                                 std::size_t attempts) {
  const PresentationPtr& group = table.presentation();
  const PcpPresentation& p = *group;
  const std::size_t n = p.size();
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::vector<std::size_t> images(n, 0);
    bool dead_end = false;
    for (std::size_t i = n; i-- > 0 && !dead_end;) {
      const std::size_t power_target = table.evaluate(images, p.power_relation(i));
      std::vector<std::size_t> conj_targets;
      for (std::size_t j = i + 1; j < n; ++j) conj_targets.push_back(table.evaluate(images, p.conjugate_relation(j, i)));
      std::vector<std::size_t> candidates;
      for (std::size_t x = 0; x < table.order(); ++x) {
        std::size_t pw = 0;
        for (unsigned long e = p.relative_order(i).get_ui(); e > 0; --e) pw = table.multiply(pw, x);
        if (pw != power_target) continue;
        bool ok = true;
        for (std::size_t j = i + 1; j < n && ok; ++j)
          ok = table.multiply(table.multiply(table.inverse(x), images[j]), x) == conj_targets[j - i - 1];
        if (ok) candidates.push_back(x);
      }
      if (candidates.empty()) dead_end = true;
      else images[i] = candidates[pick(rng, candidates.size())];
    }
    if (dead_end) continue;
    std::vector<PcpElement> elems;
    for (auto idx : images) elems.push_back(table.element(idx));
    try {
      return GroupMorphism(group, group, std::move(elems));
    } catch (const MorphismError&) {
    }
  }
  return std::nullopt;
}

namespace {

bool is_bijective(const FiniteGroupTable& table, const GroupMorphism& f) {
  const auto images = image_indices(f, table);
  std::vector<bool> seen(table.order(), false);
  for (const auto& x : table.elements()) {
    const std::size_t y = table.evaluate(images, x);
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

}  // namespace

PresentationPtr random_finite_presentation(std::mt19937_64& rng, std::size_t max_order, std::size_t max_generators) {
  static const std::vector<unsigned> orders{2, 2, 2, 3, 3, 4, 5, 6, 7};
  PresentationPtr h = PcpPresentation::trivial();
  std::size_t order = 1;
  const std::size_t target = 1 + pick(rng, max_generators);

  while (h->size() < target) {
    std::vector<unsigned> fitting;
    for (unsigned r : orders)
      if (order * r <= max_order) fitting.push_back(r);
    if (fitting.empty()) break;
    const unsigned r = fitting[pick(rng, fitting.size())];

    const FiniteGroupTable table(h);
    const std::size_t m = h->size();
    std::vector<std::size_t> alpha(m);
    for (std::size_t k = 0; k < m; ++k) alpha[k] = table.generator_index(k);
    if (m > 0 && pick(rng, 10) >= 1) {
      for (int tries = 0; tries < 30; ++tries) {
        auto f = random_endomorphism(table, rng);
        if (f && is_bijective(table, *f)) {
          alpha = image_indices(*f, table);
          break;
        }
      }
    }

    // alpha^r on the generators
    std::vector<std::size_t> alpha_r(m);
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t y = table.generator_index(k);
      for (unsigned e = 0; e < r; ++e) y = table.evaluate(alpha, table.element(y));
      alpha_r[k] = y;
    }
    std::vector<std::size_t> powers;
    for (std::size_t x = 0; x < table.order(); ++x) {
      if (table.evaluate(alpha, table.element(x)) != x) continue;
      bool ok = true;
      for (std::size_t k = 0; k < m && ok; ++k)
        ok = table.multiply(table.multiply(table.inverse(x), table.generator_index(k)), x) == alpha_r[k];
      if (ok) powers.push_back(x);
    }
    if (powers.empty()) continue;
    const std::size_t pw = powers[pick(rng, powers.size())];

    PcpBuilder b(m + 1);
    b.relative_order(0, r);
    b.power(0, shifted(h->to_word(table.element(pw)), 1));
    for (std::size_t j = 0; j < m; ++j) {
      b.conjugate(j + 1, 0, shifted(h->to_word(table.element(alpha[j])), 1));
      b.relative_order(j + 1, h->relative_order(j));
      b.power(j + 1, shifted(h->to_word(h->power_relation(j)), 1));
      for (std::size_t i = 0; i < j; ++i) b.conjugate(j + 1, i + 1, shifted(h->to_word(h->conjugate_relation(j, i)), 1));
    }
    try {
      h = b.build();
      order *= r;
    } catch (const PresentationError&) {
    }
  }
  return h;
}

std::vector<PresentationPtr> curated_finite_presentations() {
  auto w = [](std::initializer_list<std::pair<std::size_t, long>> syllables) {
    Word out;
    for (auto [g, e] : syllables) out.push_back(Syllable{g - 1, Integer(e)});
    return out;
  };
  PcpBuilder s4(4);
  s4.relative_order(0, 2).relative_order(1, 3).relative_order(2, 2).relative_order(3, 2);
  s4.conjugate(1, 0, w({{2, 2}}));
  s4.conjugate(3, 0, w({{3, 1}, {4, 1}}));
  s4.conjugate(2, 1, w({{3, 1}, {4, 1}}));
  s4.conjugate(3, 1, w({{3, 1}}));

  PcpBuilder gl23(5);
  gl23.relative_order(0, 2).relative_order(1, 3).relative_order(2, 2).relative_order(3, 2).relative_order(4, 2);
  gl23.power(2, w({{5, 1}})).power(3, w({{5, 1}}));
  gl23.conjugate(1, 0, w({{2, 2}}));
  gl23.conjugate(2, 0, w({{3, 1}, {4, 1}}));
  gl23.conjugate(3, 0, w({{4, 1}, {5, 1}}));
  gl23.conjugate(2, 1, w({{4, 1}}));
  gl23.conjugate(3, 1, w({{3, 1}, {4, 1}, {5, 1}}));
  gl23.conjugate(3, 2, w({{4, 1}, {5, 1}}));
  return {s4.build(), gl23.build()};
}

std::vector<CorpusCase> generate_corpus(std::uint64_t seed, std::size_t count, std::size_t max_order) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusCase> cases;
  std::size_t group_no = 0;
  while (cases.size() < count) {
    static const std::vector<PresentationPtr> curated = curated_finite_presentations();
    const PresentationPtr g = group_no % 4 == 3 ? curated[(group_no / 4) % curated.size()]
                                                : random_finite_presentation(rng, max_order);
    const FiniteGroupTable table(g);
    ++group_no;
    auto random_map = [&]() -> GroupMorphism {
      auto f = random_endomorphism(table, rng);
      return f ? *f : GroupMorphism::identity(g);
    };
    auto inner = [&]() { return compose_with_inner(GroupMorphism::identity(g), table.element(pick(rng, table.order()))); };

    for (int variant = 0; variant < 3 && cases.size() < count; ++variant) {
      std::string kind;
      std::optional<EndoPair> pair;
      switch (pick(rng, 6)) {
        case 0: kind = "id,id"; pair.emplace(GroupMorphism::identity(g), GroupMorphism::identity(g)); break;
        case 1: kind = "id,random"; pair.emplace(GroupMorphism::identity(g), random_map()); break;
        case 2: kind = "random,id"; pair.emplace(random_map(), GroupMorphism::identity(g)); break;
        case 3: kind = "inner,random"; pair.emplace(inner(), random_map()); break;
        default: kind = "random,random"; pair.emplace(random_map(), random_map()); break;
      }
      std::ostringstream name;
      name << "group" << group_no << "(order " << table.order() << ", " << g->size() << " gens) " << kind;
      cases.push_back(CorpusCase{name.str(), std::move(*pair)});
    }
  }
  return cases;
}

}  // namespace reid

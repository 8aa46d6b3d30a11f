#include "reid/problem_file.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace reid {

using Json = nlohmann::ordered_json;

namespace {

// Input iterator that counts consumed characters, so SAX events can be mapped to lines.
struct CountingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  std::size_t* consumed = nullptr;

  reference operator*() const { return *p; }
  CountingIterator& operator++() {
    ++p;
    ++*consumed;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p == b.p; }
};

// Records the line on which every value (by JSON pointer) ends.
class LineRecorder : public nlohmann::json_sax<Json> {
 public:
  LineRecorder(const std::string& text, const std::size_t& consumed) : consumed_(consumed) {
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') newlines_.push_back(i);
  }

  std::map<std::string, std::size_t> lines;

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }
  bool start_object(std::size_t) override { return open(false); }
  bool start_array(std::size_t) override { return open(true); }
  bool end_object() override { return close(); }
  bool end_array() override { return close(); }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

 private:
  struct Frame {
    bool array;
    std::size_t index = 0;
    std::string key;
  };

  std::string path() const {
    std::string p;
    for (const auto& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : f.key);
    return p;
  }
  std::size_t line() const {
    const std::size_t pos = consumed_ > 0 ? consumed_ - 1 : 0;
    return static_cast<std::size_t>(std::lower_bound(newlines_.begin(), newlines_.end(), pos) - newlines_.begin()) +
           1;
  }
  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  bool scalar() {
    lines.emplace(path(), line());
    advance();
    return true;
  }
  bool open(bool array) {
    lines.emplace(path(), line());
    frames_.push_back(Frame{array, 0, {}});
    return true;
  }
  bool close() {
    frames_.pop_back();
    advance();
    return true;
  }

  const std::size_t& consumed_;
  std::vector<std::size_t> newlines_;
  std::vector<Frame> frames_;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, std::size_t> lines) : lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    std::string anchor = path;
    auto it = lines_.find(anchor);
    while (it == lines_.end() && !anchor.empty()) {
      anchor.erase(anchor.rfind('/'));
      it = lines_.find(anchor);
    }
    const std::size_t line = it == lines_.end() ? 1 : it->second;
    throw ProblemFileError(ProblemFileError::Kind::validation,
                           "line " + std::to_string(line) + " (" + (path.empty() ? "/" : path) + "): " + message);
  }

  const Json& member(const Json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing \"") + key + "\"");
    return *it;
  }

  Integer integer(const Json& v, const std::string& path) const {
    if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                                             : Integer(std::to_string(v.get<std::int64_t>()));
    if (v.is_string()) {
      Integer x;
      if (x.set_str(v.get<std::string>(), 10) == 0) return x;
    }
    fail(path, "expected an integer");
  }

  std::size_t index(const Json& v, const std::string& path, std::size_t n) const {
    const Integer x = integer(v, path);
    if (x < 1 || x > n) fail(path, "generator index " + x.get_str() + " out of range 1.." + std::to_string(n));
    return x.get_ui() - 1;
  }

  Word word(const Json& v, const std::string& path, std::size_t n) const {
    if (!v.is_array()) fail(path, "expected a word: a list of [generator, exponent] pairs");
    Word w;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::string p = path + "/" + std::to_string(k);
      const Json& s = v[k];
      if (!s.is_array() || s.size() != 2) fail(p, "expected a [generator, exponent] pair");
      const std::size_t g = index(s[0], p + "/0", n);
      const Integer e = integer(s[1], p + "/1");
      if (e == 0) fail(p + "/1", "exponent must be nonzero");
      w.push_back(Syllable{g, e});
    }
    return w;
  }

 private:
  std::map<std::string, std::size_t> lines_;
};

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

PresentationPtr read_group(const Reader& r, const Json& g) {
  const Integer count = r.integer(r.member(g, "/group", "generators"), "/group/generators");
  if (count < 0 || count > 10000) r.fail("/group/generators", "generator count out of range");
  const std::size_t n = count.get_ui();
  PcpBuilder b(n);

  const Json& orders = r.member(g, "/group", "relative_orders");
  if (!orders.is_array() || orders.size() != n)
    r.fail("/group/relative_orders", "expected " + std::to_string(n) + " relative orders");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = "/group/relative_orders/" + std::to_string(i);
    try {
      b.relative_order(i, r.integer(orders[i], p));
    } catch (const PresentationError& e) {
      r.fail(p, e.what());
    }
  }

  if (auto it = g.find("powers"); it != g.end()) {
    if (!it->is_array()) r.fail("/group/powers", "expected a list");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string p = "/group/powers/" + std::to_string(k);
      const Json& rel = (*it)[k];
      const std::size_t i = r.index(r.member(rel, p, "generator"), p + "/generator", n);
      const Word w = r.word(r.member(rel, p, "word"), p + "/word", n);
      try {
        b.power(i, w);
      } catch (const PresentationError& e) {
        r.fail(p, e.what());
      }
    }
  }

  if (auto it = g.find("conjugates"); it != g.end()) {
    if (!it->is_array()) r.fail("/group/conjugates", "expected a list");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string p = "/group/conjugates/" + std::to_string(k);
      const Json& rel = (*it)[k];
      const std::size_t j = r.index(r.member(rel, p, "generator"), p + "/generator", n);
      const Integer by = r.integer(r.member(rel, p, "by"), p + "/by");
      const bool inverse = by < 0;
      const Integer by_abs = abs(by);
      if (by_abs < 1 || by_abs > n) r.fail(p + "/by", "generator index " + by.get_str() + " out of range");
      const std::size_t i = by_abs.get_ui() - 1;
      const Word w = r.word(r.member(rel, p, "word"), p + "/word", n);
      try {
        if (inverse) b.inverse_conjugate(j, i, w);
        else b.conjugate(j, i, w);
      } catch (const PresentationError& e) {
        r.fail(p, e.what());
      }
    }
  }

  try {
    return b.build();
  } catch (const PresentationError& e) {
    r.fail("/group", e.what());
  }
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json word_json(const PcpPresentation& g, const PcpElement& x) {
  Json w = Json::array();
  for (const auto& s : g.to_word(x)) w.push_back(Json::array({s.generator + 1, integer_json(s.exponent)}));
  return w;
}

}  // namespace

const GroupMorphism* ProblemFile::endomorphism(const std::string& name) const {
  for (const auto& [n, f] : endomorphisms)
    if (n == name) return &f;
  return nullptr;
}

const PcpElement* ProblemFile::element(const std::string& name) const {
  for (const auto& [n, x] : elements)
    if (n == name) return &x;
  return nullptr;
}

ProblemFile parse_problem_text(const std::string& text, const ParseOptions& options) {
  Json root;
  try {
    root = Json::parse(text, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n')) + 1;
    throw ProblemFileError(ProblemFileError::Kind::syntax, "line " + std::to_string(line) + ": " + e.what());
  }

  std::size_t consumed = 0;
  LineRecorder recorder(text, consumed);
  Json::sax_parse(CountingIterator{text.data(), &consumed}, CountingIterator{text.data() + text.size(), &consumed},
                  &recorder, nlohmann::detail::input_format_t::json, true, true);
  const Reader r(std::move(recorder.lines));

  if (!root.is_object()) r.fail("", "expected a JSON object at top level");
  ProblemFile problem;
  problem.group = read_group(r, r.member(root, "", "group"));
  const PcpPresentation& g = *problem.group;
  const std::size_t n = g.size();

  if (auto it = root.find("endomorphisms"); it != root.end()) {
    if (!it->is_object()) r.fail("/endomorphisms", "expected an object of named maps");
    for (const auto& [name, images] : it->items()) {
      const std::string p = "/endomorphisms/" + escape_pointer(name);
      if (!images.is_array() || images.size() != n)
        r.fail(p, "expected " + std::to_string(n) + " generator images");
      std::vector<PcpElement> elems;
      for (std::size_t k = 0; k < n; ++k) elems.push_back(g.collect(r.word(images[k], p + "/" + std::to_string(k), n)));
      try {
        problem.endomorphisms.emplace_back(
            name, GroupMorphism(problem.group, problem.group, std::move(elems),
                                options.skip_hom_check ? MorphismCheck::trusted : MorphismCheck::verify));
      } catch (const MorphismError& e) {
        r.fail(p, std::string("not an endomorphism: ") + e.what());
      }
    }
  }

  if (auto it = root.find("elements"); it != root.end()) {
    if (!it->is_object()) r.fail("/elements", "expected an object of named words");
    for (const auto& [name, word] : it->items())
      problem.elements.emplace_back(name, g.collect(r.word(word, "/elements/" + escape_pointer(name), n)));
  }
  return problem;
}

ProblemFile parse_problem_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError(ProblemFileError::Kind::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ProblemFileError(ProblemFileError::Kind::io, "error reading " + path);
  try {
    return parse_problem_text(buf.str(), options);
  } catch (const ProblemFileError& e) {
    throw ProblemFileError(e.kind(), path + ": " + e.what());
  }
}

std::string serialize_problem(const ProblemFile& problem) {
  const PcpPresentation& g = *problem.group;
  const std::size_t n = g.size();
  Json group;
  group["generators"] = n;
  group["relative_orders"] = Json::array();
  for (std::size_t i = 0; i < n; ++i) group["relative_orders"].push_back(integer_json(g.relative_order(i)));

  Json powers = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    if (g.has_finite_order(i) && !g.power_relation(i).is_identity())
      powers.push_back(Json{{"generator", i + 1}, {"word", word_json(g, g.power_relation(i))}});
  group["powers"] = powers;

  Json conjugates = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const PcpElement gj = g.generator(j);
      if (g.conjugate_relation(j, i) != gj)
        conjugates.push_back(Json{{"generator", j + 1}, {"by", i + 1}, {"word", word_json(g, g.conjugate_relation(j, i))}});
      if (!g.has_finite_order(i) && g.conjugate_relation(j, i, true) != gj)
        conjugates.push_back(Json{{"generator", j + 1},
                                  {"by", -static_cast<long>(i + 1)},
                                  {"word", word_json(g, g.conjugate_relation(j, i, true))}});
    }
  group["conjugates"] = conjugates;

  Json root;
  root["group"] = group;
  Json endos = Json::object();
  for (const auto& [name, f] : problem.endomorphisms) {
    Json images = Json::array();
    for (const auto& img : f.images()) images.push_back(word_json(g, img));
    endos[name] = images;
  }
  root["endomorphisms"] = endos;
  Json elems = Json::object();
  for (const auto& [name, x] : problem.elements) elems[name] = word_json(g, x);
  root["elements"] = elems;
  return root.dump(2) + "\n";
}

PcpElement parse_element_word(const PcpPresentation& group, const std::string& text) {
  Json v;
  try {
    v = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ProblemFileError(ProblemFileError::Kind::syntax, "element \"" + text + "\": " + e.what());
  }
  const Reader r({});
  try {
    return group.collect(r.word(v, "", group.size()));
  } catch (const ProblemFileError& e) {
    throw ProblemFileError(ProblemFileError::Kind::syntax, "element \"" + text + "\": " + e.what());
  }
}

}  // namespace reid

#pragma once

// JSON problem files: a polycyclic presentation, named endomorphisms and
// named elements. Generator indices are 1-based in the file; words are lists
// of [generator, exponent] pairs, exponents being integers or decimal strings.
//
//   {
//     "group": {
//       "generators": 2,
//       "relative_orders": [2, 3],            // 0 = infinite
//       "powers": [{"generator": 1, "word": []}],
//       "conjugates": [{"generator": 2, "by": 1, "word": [[2, 2]]}]
//     },                                      // "by": -i for g_j^(g_i^-1)
//     "endomorphisms": {"flip": [[[1, 1]], [[2, 2]]]},
//     "elements": {"a": [[1, 1]]}
//   }

#include "reid/errors.hpp"
#include "reid/pcp.hpp"

#include <string>
#include <utility>
#include <vector>

namespace reid {

class ProblemFileError : public Error {
 public:
  enum class Kind { io, syntax, validation };

  ProblemFileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ParseOptions {
  bool skip_hom_check = false;
};

struct ProblemFile {
  PresentationPtr group;
  std::vector<std::pair<std::string, GroupMorphism>> endomorphisms;
  std::vector<std::pair<std::string, PcpElement>> elements;

  /// nullptr when absent
  const GroupMorphism* endomorphism(const std::string& name) const;
  const PcpElement* element(const std::string& name) const;
};

/// Throws ProblemFileError; validation messages name the offending line and JSON path.
ProblemFile parse_problem_file(const std::string& path, const ParseOptions& options = {});
ProblemFile parse_problem_text(const std::string& text, const ParseOptions& options = {});

/// Inverse of parsing; every nontrivial relation is written in normal form.
std::string serialize_problem(const ProblemFile& problem);

/// An element given as a JSON word such as "[[1,1],[4,-1]]".
PcpElement parse_element_word(const PcpPresentation& group, const std::string& text);

}  // namespace reid

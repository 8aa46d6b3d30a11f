#include "support.hpp"

#include "reid/errors.hpp"
#include "reid/problem_file.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace reid;
using namespace reid::testing;

namespace {

const std::string data_dir = REID_DATA_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(REID_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return data_dir + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("reid_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

ProblemFileError::Kind parse_error_kind(const std::string& text) {
  try {
    parse_problem_text(text);
  } catch (const ProblemFileError& e) {
    return e.kind();
  }
  FAIL("text parsed without error");
  return ProblemFileError::Kind::io;
}

const char* klein = R"({
  "group": {
    "generators": 2,
    "relative_orders": [0, 0],
    "conjugates": [
      {"generator": 2, "by": 1, "word": [[2, -1]]},
      {"generator": 2, "by": -1, "word": [[2, -1]]}
    ]
  },
  "elements": {"b": [[2, 1]]}
})";

}  // namespace

TEST_CASE("data files parse") {
  for (const char* name : {"example_group.json", "s3.json", "z.json", "trivial.json"}) {
    INFO(name);
    CHECK_NOTHROW(parse_problem_file(data(name)));
  }
  const auto p = parse_problem_file(data("example_group.json"));
  CHECK(p.group->size() == 4);
  CHECK(p.endomorphism("phi") != nullptr);
  CHECK(p.endomorphism("missing") == nullptr);
  REQUIRE(p.element("g1^3") != nullptr);
  CHECK(*p.element("g1^3") == p.group->power(p.group->generator(0), 3));
}

TEST_CASE("problem files round trip") {
  for (const char* name : {"example_group.json", "s3.json", "z.json"}) {
    const auto p = parse_problem_file(data(name));
    const auto q = parse_problem_text(serialize_problem(p));
    CHECK(q.group->relative_orders() == p.group->relative_orders());
    for (std::size_t i = 0; i < p.group->size(); ++i)
      for (std::size_t j = 0; j < p.group->size(); ++j) {
        const PcpElement x = p.group->generator(i), y = p.group->generator(j);
        CHECK(q.group->multiply(x, y) == p.group->multiply(x, y));
      }
    REQUIRE(q.endomorphisms.size() == p.endomorphisms.size());
    for (std::size_t k = 0; k < p.endomorphisms.size(); ++k)
      CHECK(q.endomorphisms[k].second.images() == p.endomorphisms[k].second.images());
    CHECK(q.elements == p.elements);
  }
}

TEST_CASE("invalid problem files") {
  using Kind = ProblemFileError::Kind;
  CHECK(parse_error_kind("{ \"group\": ") == Kind::syntax);
  // right-hand side starting below the generator
  CHECK(parse_error_kind(R"({"group": {"generators": 2, "relative_orders": [0, 0],
      "conjugates": [{"generator": 2, "by": 1, "word": [[1, 1]]}]}})") == Kind::validation);
  // a -> b does not respect a^2 = 1 in S3
  CHECK(parse_error_kind(R"({"group": {"generators": 2, "relative_orders": [2, 3],
      "conjugates": [{"generator": 2, "by": 1, "word": [[2, 2]]}]},
      "endomorphisms": {"bad": [[[2, 1]], [[2, 1]]]}})") == Kind::validation);
  CHECK(parse_error_kind(R"({"group": {"generators": 1, "relative_orders": [1]}})") == Kind::validation);
  CHECK_THROWS_AS(parse_problem_file("/nonexistent/reid.json"), ProblemFileError);

  try {
    parse_problem_text("{\n\"group\": {\"generators\": 2,\n\"relative_orders\": [0]}}");
    FAIL("expected a validation error");
  } catch (const ProblemFileError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("large exponents as strings") {
  const auto p = parse_problem_text(R"({"group": {"generators": 1, "relative_orders": [0]},
      "elements": {"big": [[1, "123456789012345678901234567890"]]}})");
  CHECK((*p.element("big"))[0] == Integer("123456789012345678901234567890"));
}

TEST_CASE("command line answers") {
  auto r = run("conj " + data("example_group.json") + " --phi phi --psi psi g1 g1^2");
  CHECK(r.code == 0);
  CHECK(r.out.find("not-conjugate") != std::string::npos);

  r = run("--json conj " + data("example_group.json") + " --phi phi --psi psi g1 g1^3");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "conjugate");

  r = run("--json number " + data("example_group.json") + " --phi phi --psi psi");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["number"] == 8);

  r = run("--json classes " + data("example_group.json") + " --phi id --psi psi");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["status"] == "infinite");

  r = run("--json classes " + data("s3.json") + " --phi id --psi id");
  j = nlohmann::json::parse(r.out);
  CHECK(j["number"] == 3);
  CHECK(j["representatives"].size() == 3);

  r = run("number " + data("z.json") + " --phi triple --psi id");
  CHECK(r.out == "2\n");

  r = run("--json conj " + data("z.json") + " --phi triple --psi id four '[]'");
  j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "conjugate");
  CHECK(j["witness"] == nlohmann::json::parse("[[1, -2]]"));

  r = run("conj " + data("z.json") + " --phi triple --psi id '[[1, 3]]' '[]'");
  CHECK(r.out.find("not-conjugate") != std::string::npos);

  r = run("--json check " + data("example_group.json"));
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["derived_length"] == 3);

  r = run("verify " + data("s3.json") + " --trials 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("command line exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("conj " + data("s3.json") + " --phi nope --psi id a b").code == 2);
  CHECK(run("conj " + data("s3.json") + " --phi id --psi id a").code == 2);
  CHECK(run("verify " + data("z.json")).code == 2);
  CHECK(run("check /nonexistent/reid.json").code == 5);
  CHECK(run("check " + temp_file("syntax.json", "{ nope")).code == 2);
  CHECK(run("check " + temp_file("lower.json", R"({"group": {"generators": 2, "relative_orders": [0, 0],
      "conjugates": [{"generator": 2, "by": 1, "word": [[1, 1]]}]}})")).code == 6);
  CHECK(run("--max-enum 1 classes " + data("s3.json") + " --phi id --psi id").code == 4);
  CHECK(run("conj " + temp_file("klein.json", klein) + " --phi id --psi id b b").code == 3);

  const auto r = run("--json check /nonexistent/reid.json");
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "error");
  CHECK(j["kind"] == "io");
}

TEST_CASE("skipping the homomorphism check") {
  const std::string bad = temp_file("bad_map.json", R"({"group": {"generators": 2, "relative_orders": [2, 3],
      "conjugates": [{"generator": 2, "by": 1, "word": [[2, 2]]}]},
      "endomorphisms": {"bad": [[[2, 1]], [[2, 1]]]}})");
  CHECK(run("check " + bad).code == 6);
  CHECK(run("--skip-hom-check check " + bad).code == 0);
}

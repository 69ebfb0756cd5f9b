#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gebp/model.hpp"
#include "gebp/variant.hpp"

namespace gebp {

// Input that fails to parse or validate; the CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Accepts any rational literal equal to 1/E with integer E >= 2.
Epsilon parse_epsilon(const std::string& text);
std::string epsilon_string(const Epsilon& eps);

// JSON uses insertion-ordered objects and canonical "num/den" strings so
// generate/serialize round-trips are byte-identical.
using Json = nlohmann::ordered_json;

// Rational field: "num/den" or decimal string, or an exact JSON integer.
Rational rational_from_json(const Json& value, const std::string& context);

struct InstanceFile {
  Instance instance;
  std::optional<Epsilon> epsilon;
};

struct TypedFile {
  TypedInstance instance;
  std::optional<Epsilon> epsilon;
};

InstanceFile instance_from_json(const Json& root);
Json instance_to_json(const Instance& instance, const std::optional<Epsilon>& epsilon);
InstanceFile load_instance(const std::filesystem::path& path);

TypedFile typed_from_json(const Json& root);
Json typed_to_json(const TypedInstance& instance, const std::optional<Epsilon>& epsilon);
TypedFile load_typed(const std::filesystem::path& path);

struct SolutionFile {
  Assignment assignment;
  Rational cost{0};
  Json audit = Json::object();
};

Json solution_to_json(const SolutionFile& solution);
SolutionFile solution_from_json(const Json& root);
SolutionFile load_solution(const std::filesystem::path& path);

Json typed_solution_to_json(const TypedSolution& solution);

// Parses the file as JSON, with the file name in error messages.
Json load_json(const std::filesystem::path& path);
// Writes with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& value);

}  // namespace gebp

#include "gebp/io.hpp"

#include <fstream>

namespace gebp {

Epsilon parse_epsilon(const std::string& text) {
  Rational value;
  try {
    value = Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad accuracy value: ") + e.what());
  }
  if (!value.is_positive() || value.num() != 1 || value.den() < 2) {
    throw ParseError("accuracy must be 1/E for an integer E >= 2, got " + text);
  }
  return Epsilon(to_int64(value.den()));
}

std::string epsilon_string(const Epsilon& eps) { return "1/" + std::to_string(eps.inverse()); }

Rational rational_from_json(const Json& value, const std::string& context) {
  try {
    if (value.is_string()) {
      return Rational::parse(value.get<std::string>());
    }
    if (value.is_number_integer()) {
      return Rational(static_cast<long long>(value.get<std::int64_t>()));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(context + ": " + e.what());
  }
  throw ParseError(context + ": expected a rational string or integer, got " + value.dump());
}

namespace {

MachineSpec machine_from_json(const Json& value, const std::string& context) {
  if (!value.is_object() || !value.contains("f") || !value.contains("c") ||
      !value.contains("sigma")) {
    throw ParseError(context + ": expected an object with f, c, sigma");
  }
  return MachineSpec{
      .fixed_cost = rational_from_json(value.at("f"), context + ".f"),
      .capacity = rational_from_json(value.at("c"), context + ".c"),
      .overtime_rate = rational_from_json(value.at("sigma"), context + ".sigma"),
  };
}

Json machine_to_json(const MachineSpec& machine) {
  Json out = Json::object();
  out["f"] = machine.fixed_cost.str();
  out["c"] = machine.capacity.str();
  out["sigma"] = machine.overtime_rate.str();
  return out;
}

std::vector<Rational> jobs_from_json(const Json& root) {
  if (!root.contains("jobs") || !root.at("jobs").is_array()) {
    throw ParseError("instance file needs a jobs array");
  }
  std::vector<Rational> jobs;
  jobs.reserve(root.at("jobs").size());
  int index = 0;
  for (const Json& value : root.at("jobs")) {
    jobs.push_back(rational_from_json(value, "jobs[" + std::to_string(index++) + "]"));
  }
  return jobs;
}

std::optional<Epsilon> epsilon_from_json(const Json& root) {
  if (!root.contains("epsilon")) return std::nullopt;
  const Json& value = root.at("epsilon");
  if (!value.is_string()) throw ParseError("epsilon must be a string like \"1/2\"");
  return parse_epsilon(value.get<std::string>());
}

void require_valid(const ValidationReport& report) {
  if (!report.ok) {
    std::string message = "instance failed validation:";
    for (const std::string& issue : report.issues) message += "\n  " + issue;
    throw ParseError(message);
  }
}

}  // namespace

InstanceFile instance_from_json(const Json& root) {
  if (!root.is_object() || !root.contains("machines") || !root.at("machines").is_array()) {
    throw ParseError("instance file needs a machines array");
  }
  InstanceFile file;
  int index = 0;
  for (const Json& value : root.at("machines")) {
    file.instance.machines.push_back(
        machine_from_json(value, "machines[" + std::to_string(index++) + "]"));
  }
  file.instance.jobs = jobs_from_json(root);
  file.epsilon = epsilon_from_json(root);
  require_valid(validate_instance(file.instance));
  return file;
}

Json instance_to_json(const Instance& instance, const std::optional<Epsilon>& epsilon) {
  Json out = Json::object();
  if (epsilon) out["epsilon"] = epsilon_string(*epsilon);
  out["machines"] = Json::array();
  for (const MachineSpec& machine : instance.machines) {
    out["machines"].push_back(machine_to_json(machine));
  }
  out["jobs"] = Json::array();
  for (const Rational& p : instance.jobs) out["jobs"].push_back(p.str());
  return out;
}

InstanceFile load_instance(const std::filesystem::path& path) {
  return instance_from_json(load_json(path));
}

TypedFile typed_from_json(const Json& root) {
  if (!root.is_object() || !root.contains("types") || !root.at("types").is_array()) {
    throw ParseError("typed instance file needs a types array");
  }
  TypedFile file;
  int index = 0;
  for (const Json& value : root.at("types")) {
    file.instance.types.push_back(
        machine_from_json(value, "types[" + std::to_string(index++) + "]"));
  }
  file.instance.jobs = jobs_from_json(root);
  file.epsilon = epsilon_from_json(root);
  require_valid(validate_typed(file.instance));
  return file;
}

Json typed_to_json(const TypedInstance& instance, const std::optional<Epsilon>& epsilon) {
  Json out = Json::object();
  if (epsilon) out["epsilon"] = epsilon_string(*epsilon);
  out["types"] = Json::array();
  for (const MachineSpec& type : instance.types) out["types"].push_back(machine_to_json(type));
  out["jobs"] = Json::array();
  for (const Rational& p : instance.jobs) out["jobs"].push_back(p.str());
  return out;
}

TypedFile load_typed(const std::filesystem::path& path) { return typed_from_json(load_json(path)); }

Json solution_to_json(const SolutionFile& solution) {
  Json out = Json::object();
  out["assignment"] = solution.assignment.target;
  out["cost"] = solution.cost.str();
  out["audit"] = solution.audit;
  return out;
}

SolutionFile solution_from_json(const Json& root) {
  if (!root.is_object() || !root.contains("assignment") || !root.at("assignment").is_array()) {
    throw ParseError("solution file needs an assignment array");
  }
  SolutionFile file;
  for (const Json& value : root.at("assignment")) {
    if (!value.is_number_integer()) {
      throw ParseError("assignment entries must be machine indices");
    }
    file.assignment.target.push_back(value.get<int>());
  }
  if (!root.contains("cost")) throw ParseError("solution file needs a cost");
  file.cost = rational_from_json(root.at("cost"), "cost");
  if (root.contains("audit")) file.audit = root.at("audit");
  return file;
}

SolutionFile load_solution(const std::filesystem::path& path) {
  return solution_from_json(load_json(path));
}

Json typed_solution_to_json(const TypedSolution& solution) {
  Json out = Json::object();
  out["machines"] = Json::array();
  for (const OpenedMachine& machine : solution.machines) {
    Json entry = Json::object();
    entry["type"] = machine.type;
    entry["jobs"] = machine.jobs;
    entry["dedicated"] = machine.dedicated;
    out["machines"].push_back(std::move(entry));
  }
  out["cost"] = solution.cost.str();
  return out;
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << value.dump(2) << "\n";
}

}  // namespace gebp

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <CLI11.hpp>

#include "moikit/error.hpp"
#include "moikit/io.hpp"
#include "moikit/tolerances.hpp"
#include "moikit/version.hpp"
#include "verify_suite.hpp"

namespace moikit::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

template <typename T>
T get_as(const nlohmann::json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(std::string("config: \"") + key + "\" has the wrong type");
  }
}

void check_strategy(const std::string& s) {
  if (s != "moi" && s != "fd" && s != "power") fail("strategy must be moi, fd or power, got \"" + s + "\"");
}

void check_filter(const std::vector<std::string>& groups) {
  const auto& known = verify_groups();
  for (const auto& g : groups)
    if (std::find(known.begin(), known.end(), g) == known.end()) fail("unknown verify group \"" + g + "\"");
}

}  // namespace

void apply_tolerance_override(const std::string& spec, std::map<std::string, double>& table) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) fail("tolerance must be name=value, got \"" + spec + "\"");
  const std::string name = spec.substr(0, eq);
  const std::string text = spec.substr(eq + 1);
  const auto it = table.find(name);
  if (it == table.end()) fail("unknown tolerance \"" + name + "\"");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value >= 0.0))
    fail("tolerance " + name + " needs a non-negative number, got \"" + text + "\"");
  it->second = value;
}

void apply_config_json(const nlohmann::json& doc, const std::filesystem::path& base, RunConfig& config) {
  if (!doc.is_object()) fail("config must be a JSON object");
  auto path_of = [&](const std::string& s) {
    std::filesystem::path p(s);
    return p.is_absolute() ? p : base / p;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") config.command = get_as<std::string>(doc, "command");
    else if (key == "function") config.function = path_of(get_as<std::string>(doc, "function"));
    else if (key == "matrices") {
      config.matrices.clear();
      for (const auto& m : get_as<std::vector<std::string>>(doc, "matrices")) config.matrices.push_back(path_of(m));
    } else if (key == "order") config.order = get_as<int>(doc, "order");
    else if (key == "strategy") config.strategy = get_as<std::string>(doc, "strategy");
    else if (key == "check") config.check = get_as<bool>(doc, "check");
    else if (key == "tolerances") {
      if (!value.is_object()) fail("config: \"tolerances\" must be an object");
      for (const auto& [name, v] : value.items()) {
        if (!v.is_number()) fail("config: tolerance " + name + " must be a number");
        std::ostringstream spec;
        spec.precision(17);
        spec << name << '=' << v.get<double>();
        apply_tolerance_override(spec.str(), config.tolerances);
      }
    } else if (key == "seed") config.seed = get_as<std::uint64_t>(doc, "seed");
    else if (key == "out") config.out = path_of(get_as<std::string>(doc, "out"));
    else if (key == "result") config.result = path_of(get_as<std::string>(doc, "result"));
    else if (key == "threads") config.threads = get_as<unsigned>(doc, "threads");
    else if (key == "deterministic") config.deterministic = get_as<bool>(doc, "deterministic");
    else if (key == "filter") config.filter = get_as<std::vector<std::string>>(doc, "filter");
    else if (key == "p") config.p = get_as<double>(doc, "p");
    else if (key == "steps") config.steps = get_as<int>(doc, "steps");
    else fail("config: unknown key \"" + key + "\"");
  }
}

ParsedArgs parse_args(std::span<const std::string> args, std::ostream& out) {
  CLI::App app{"Divided differences, multiple operator integrals and matrix-function derivatives", "moikit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  std::string config_path, function_path, strategy, out_path, result_path;
  std::vector<std::string> matrix_paths, tolerance_specs, filter;
  int order = 0, steps = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool check = false, deterministic = true;
  double p = 1.0;

  std::map<std::string, CLI::Option*> opts;
  const std::map<std::string, std::string> descriptions{
      {"eval", "f(A) by functional calculus"},
      {"derivative", "D^k f(A)[B_1, ..., B_k]"},
      {"remainder", "k-th Taylor remainder of f at a in direction b"},
      {"verify", "seeded identity and inequality suite"},
      {"bench", "time the core operations"},
  };
  for (const auto& name : commands()) app.add_subcommand(name, descriptions.at(name))->fallthrough();

  opts["config"] = app.add_option("--config", config_path, "JSON config; flags override it")->check(CLI::ExistingFile);
  opts["function"] = app.add_option("--function", function_path, "function spec JSON");
  opts["matrix"] = app.add_option("--matrix", matrix_paths, "matrix JSON (repeatable; A first)");
  opts["order"] = app.add_option("--order", order, "derivative / remainder order k")->check(CLI::Range(1, 16));
  opts["strategy"] = app.add_option("--strategy", strategy, "moi | fd | power");
  opts["check"] = app.add_flag("--check", check, "cross-check the derivative against the oracles");
  opts["tolerance"] = app.add_option("--tolerance", tolerance_specs, "name=value (repeatable)");
  opts["seed"] = app.add_option("--seed", seed, "RNG seed");
  opts["out"] = app.add_option("--out", out_path, "report path (default stdout)");
  opts["result"] = app.add_option("--result", result_path, "matrix output path");
  opts["threads"] = app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  opts["deterministic"] = app.add_flag("--deterministic,!--no-deterministic", deterministic,
                                       "ordered reductions (the only mode implemented)");
  opts["filter"] = app.add_option("--filter", filter, "verify groups to run (repeatable)");
  opts["p"] = app.add_option("--p", p, "Schatten exponent for the remainder bound");
  opts["steps"] = app.add_option("--steps", steps, "Gauss-Legendre points for the integral remainder")
                      ->check(CLI::Range(1, 4096));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, 0};
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return {std::nullopt, 0};
  } catch (const CLI::ParseError& e) {
    fail(e.what());
  }

  RunConfig config;
  config.tolerances = tolerances::defaults();
  if (opts["config"]->count() > 0) {
    const std::filesystem::path path(config_path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      fail(path.string() + ": " + e.what());
    }
    apply_config_json(doc, path.parent_path(), config);
  }
  config.command = app.get_subcommands().front()->get_name();

  if (opts["function"]->count() > 0) config.function = function_path;
  if (opts["matrix"]->count() > 0) config.matrices.assign(matrix_paths.begin(), matrix_paths.end());
  if (opts["order"]->count() > 0) config.order = order;
  if (opts["strategy"]->count() > 0) config.strategy = strategy;
  if (opts["check"]->count() > 0) config.check = check;
  for (const auto& spec : tolerance_specs) apply_tolerance_override(spec, config.tolerances);
  if (opts["seed"]->count() > 0) config.seed = seed;
  if (opts["out"]->count() > 0) config.out = out_path;
  if (opts["result"]->count() > 0) config.result = result_path;
  if (opts["threads"]->count() > 0) config.threads = threads;
  if (opts["deterministic"]->count() > 0) config.deterministic = deterministic;
  if (opts["filter"]->count() > 0) config.filter = filter;
  if (opts["p"]->count() > 0) config.p = p;
  if (opts["steps"]->count() > 0) config.steps = steps;

  check_strategy(config.strategy);
  check_filter(config.filter);
  if (config.order && *config.order < 1) fail("order must be >= 1");
  for (const auto& m : config.matrices)
    if (!std::filesystem::exists(m)) fail("matrix file not found: " + m.string());
  if (config.function && !std::filesystem::exists(*config.function))
    fail("function file not found: " + config.function->string());
  return {std::move(config), 0};
}

nlohmann::ordered_json config_echo(const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["command"] = config.command;
  doc["function"] = config.function ? nlohmann::ordered_json(config.function->generic_string()) : nlohmann::ordered_json();
  doc["matrices"] = nlohmann::ordered_json::array();
  for (const auto& m : config.matrices) doc["matrices"].push_back(m.generic_string());
  doc["order"] = config.order ? nlohmann::ordered_json(*config.order) : nlohmann::ordered_json();
  doc["strategy"] = config.strategy;
  doc["check"] = config.check;
  doc["tolerances"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : config.tolerances) doc["tolerances"][name] = value;
  doc["seed"] = config.seed;
  doc["threads"] = config.threads;
  doc["deterministic"] = config.deterministic;
  doc["filter"] = config.filter;
  doc["p"] = config.p;
  doc["steps"] = config.steps;
  return doc;
}

}  // namespace moikit::cli

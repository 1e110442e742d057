#include "fermatseq/config.hpp"

#include <cstdlib>
#include <fstream>

#include "fermatseq/errors.hpp"

namespace fermatseq {

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Text:
      return "text";
  }
  return "json";
}

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  return std::nullopt;
}

arith::ArithConfig RunConfig::arith() const {
  arith::ArithConfig c;
  c.seed = seed;
  c.witnesses = witnesses;
  c.materialization_bound = materialization_bound;
  return c;
}

explore::ExploreConfig RunConfig::explore() const {
  explore::ExploreConfig c;
  c.arith = arith();
  c.workers = static_cast<unsigned>(worker_count);
  return c;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["materialization_bound"] = materialization_bound;
  j["search_cap"] = search_cap;
  j["worker_count"] = worker_count;
  j["witnesses"] = witnesses;
  j["output_format"] = std::string(to_string(output_format));
  return j;
}

namespace {

std::uint64_t unsigned_field(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw PreconditionError("config: " + key + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

void RunConfig::merge(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      seed = unsigned_field(j, key);
    } else if (key == "materialization_bound") {
      materialization_bound = unsigned_field(j, key);
    } else if (key == "search_cap") {
      search_cap = unsigned_field(j, key);
    } else if (key == "worker_count") {
      worker_count = unsigned_field(j, key);
      if (worker_count < 1 || worker_count > 256) throw PreconditionError("config: worker_count must be in [1, 256]");
    } else if (key == "witnesses") {
      const auto w = unsigned_field(j, key);
      if (w < 1 || w > 10'000) throw PreconditionError("config: witnesses must be in [1, 10000]");
      witnesses = static_cast<unsigned>(w);
    } else if (key == "output_format") {
      if (!value.is_string()) throw PreconditionError("config: output_format must be a string");
      auto f = parse_output_format(value.get<std::string>());
      if (!f) throw PreconditionError("config: output_format must be json, csv or text");
      output_format = *f;
    } else {
      throw PreconditionError("config: unknown key " + key);
    }
  }
}

RunConfig load_run_config(const std::optional<std::string>& path) {
  RunConfig cfg;
  std::optional<std::string> file = path;
  if (!file) {
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) file = env;
  }
  if (!file) return cfg;
  std::ifstream in(*file);
  if (!in) throw PreconditionError("config: cannot read " + *file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("config: " + *file + ": " + e.what());
  }
  cfg.merge(j);
  return cfg;
}

}  // namespace fermatseq

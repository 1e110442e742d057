#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fermatseq/arith.hpp"
#include "fermatseq/explorers.hpp"

namespace fermatseq {

enum class OutputFormat { Json, Csv, Text };

std::string_view to_string(OutputFormat f);
std::optional<OutputFormat> parse_output_format(std::string_view s);

/// Everything that can change a result. Written at the top of every output.
struct RunConfig {
  std::uint64_t seed = arith::kDefaultSeed;
  std::uint64_t materialization_bound = arith::kDefaultMaterializationBound;
  std::uint64_t search_cap = 10'000;
  std::uint64_t worker_count = 1;
  unsigned witnesses = arith::kDefaultWitnesses;
  OutputFormat output_format = OutputFormat::Json;

  [[nodiscard]] arith::ArithConfig arith() const;
  [[nodiscard]] explore::ExploreConfig explore() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;

  /// Overlays the keys present in `j`. PreconditionError on unknown keys or bad values.
  void merge(const nlohmann::json& j);
};

/// Name of the environment variable holding the default config path.
inline constexpr const char* kConfigEnvVar = "FERMATSEQ_CONFIG";

/// Defaults, then the file (explicit path, else $FERMATSEQ_CONFIG if set).
RunConfig load_run_config(const std::optional<std::string>& path);

}  // namespace fermatseq

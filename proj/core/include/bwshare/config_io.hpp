#ifndef BWSHARE_CONFIG_IO_HPP_
#define BWSHARE_CONFIG_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "bwshare/experiments.hpp"
#include "bwshare/simulator.hpp"

namespace bwshare {

// Parsed experiment configuration file. Sections: `system`, `arrivals`,
// `policy`, `sweep` (optional), `tolerances` (optional). Unknown sections or
// keys are a hard error. Scalars broadcast: `delivery_prob`, `throughput_req`
// and `rate` accept a number (uniform), an [operator][region] array, or the
// fully nested per-client form; `clients_per` a number or per-(operator,
// region) array; `sharing_bound` a number or a symmetric matrix.
//
// A `sweep` section restricts the file to the two-operator, two-region
// scenario family used by the sweep experiments.
struct LoadedConfig {
  RunConfig run;
  Tolerances tol;
  std::optional<ScenarioSpec> sweep;
};

LoadedConfig parse_config(const std::string& text);
LoadedConfig load_config_file(const std::filesystem::path& path);

}  // namespace bwshare

#endif  // BWSHARE_CONFIG_IO_HPP_

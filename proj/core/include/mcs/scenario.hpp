#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcs/fpmt.hpp"
#include "mcs/geo.hpp"
#include "mcs/mpft.hpp"

namespace mcs {

enum class ScenarioMode { fpmt, mpft };
enum class TaskDistribution { compact, scattered, hybrid };

struct BoundingBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 2000.0;
  double y1 = 2000.0;

  bool operator==(const BoundingBox&) const = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  ScenarioMode mode = ScenarioMode::fpmt;
  int participants = 10;  // m (fpmt) — participant count
  int tasks = 20;         // n
  int quota = 0;          // q (fpmt); 0 draws a value from [2, 7]
  int capacity = 6;       // per-task capacity (fpmt) or demand (mpft)
  TaskDistribution distribution = TaskDistribution::hybrid;
  CoordMode coord_mode = CoordMode::planar;
  BoundingBox user_area;
  double speed = 70.0;  // meters per minute
  int area_count = 6;
  int area_pop_lo = 10;
  int area_pop_hi = 100;
  double incentive_lo = 1.0;
  double incentive_hi = 10.0;

  bool operator==(const ScenarioConfig&) const = default;

  // mpft mode defaults to 20 tasks demanding 5 performers each.
  static ScenarioConfig defaults_for(ScenarioMode mode);
};

struct ScenarioInstance {
  ScenarioConfig config;
  std::optional<FpmtInstance> fpmt;
  std::optional<MpftInstance> mpft;

  bool operator==(const ScenarioInstance&) const = default;
};

// Deterministic per seed. Participants are uniform over the user area;
// tasks follow the distribution: compact uses a centered sub-box at 25% of
// the linear extent, scattered a box at 2x, hybrid the user area itself.
FpmtInstance generate_fpmt(const ScenarioConfig& config);

// Areas tile the user area on a near-square grid; populations are uniform
// in [pop_lo, pop_hi] (resampled up to 100 times until supply covers
// demand); incentives are inversely proportional to population; distances
// run from area centroids to tasks.
MpftInstance generate_mpft(const ScenarioConfig& config);

ScenarioInstance generate(const ScenarioConfig& config);

// Human-readable nested key-value document; load(save(x)) == x.
std::string serialize_instance(const ScenarioInstance& inst);
ScenarioInstance deserialize_instance(const std::string& text);
void save_instance(const ScenarioInstance& inst, const std::string& path);
ScenarioInstance load_instance(const std::string& path);

// Tower CSV importer: header `id,lat,lon`, decimal degrees.
std::vector<Location> load_tower_csv(const std::string& path);

// Identifier of the random stream stored in instance files.
inline constexpr const char* kRngAlgorithm = "mt19937_64-shift53-v1";

}  // namespace mcs

#include "mcs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mcs/errors.hpp"

namespace mcs {

namespace {

using nlohmann::json;

// Seedable stream with an implementation-pinned mapping to doubles and
// integer ranges, so instances reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

void check_box(const BoundingBox& b) {
  if (!(b.x1 > b.x0) || !(b.y1 > b.y0)) {
    throw ParameterError("bounding box must have positive extent");
  }
}

BoundingBox task_box(const ScenarioConfig& c) {
  const double cx = (c.user_area.x0 + c.user_area.x1) / 2.0;
  const double cy = (c.user_area.y0 + c.user_area.y1) / 2.0;
  const double w = c.user_area.x1 - c.user_area.x0;
  const double h = c.user_area.y1 - c.user_area.y0;
  double fx = 0.5, fy = 0.5;
  switch (c.distribution) {
    case TaskDistribution::compact:
      fx = fy = 0.125;  // 25% of the linear extent
      break;
    case TaskDistribution::scattered:
      fx = fy = 1.0;  // 2x the linear extent
      break;
    case TaskDistribution::hybrid:
      break;
  }
  BoundingBox b{cx - fx * w, cy - fy * h, cx + fx * w, cy + fy * h};
  if (c.coord_mode == CoordMode::geographic) {
    b.x0 = std::max(b.x0, -180.0);
    b.x1 = std::min(b.x1, 180.0);
    b.y0 = std::max(b.y0, -90.0);
    b.y1 = std::min(b.y1, 90.0);
  }
  return b;
}

Location draw_point(Rng& rng, CoordMode mode, const BoundingBox& b) {
  Location loc;
  loc.mode = mode;
  loc.x = rng.uniform(b.x0, b.x1);
  loc.y = rng.uniform(b.y0, b.y1);
  return loc;
}

}  // namespace

ScenarioConfig ScenarioConfig::defaults_for(ScenarioMode mode) {
  ScenarioConfig c;
  c.mode = mode;
  if (mode == ScenarioMode::mpft) {
    c.tasks = 20;
    c.capacity = 5;
  }
  return c;
}

FpmtInstance generate_fpmt(const ScenarioConfig& config) {
  if (config.mode != ScenarioMode::fpmt) {
    throw ParameterError("config mode is not fpmt");
  }
  check_box(config.user_area);
  if (config.participants < 1 || config.tasks < 1 || config.capacity < 1) {
    throw ParameterError("participant, task and capacity counts must be positive");
  }
  Rng rng(config.seed);
  FpmtInstance inst;
  inst.quota = config.quota > 0 ? config.quota : rng.uniform_int(2, 7);
  inst.quota = std::min(inst.quota, config.tasks);
  for (int i = 0; i < config.participants; ++i) {
    inst.participants.push_back(
        {i, draw_point(rng, config.coord_mode, config.user_area)});
  }
  const BoundingBox tb = task_box(config);
  for (int j = 0; j < config.tasks; ++j) {
    inst.tasks.push_back(
        {j, draw_point(rng, config.coord_mode, tb), config.capacity});
  }
  validate(inst);
  return inst;
}

MpftInstance generate_mpft(const ScenarioConfig& config) {
  if (config.mode != ScenarioMode::mpft) {
    throw ParameterError("config mode is not mpft");
  }
  check_box(config.user_area);
  if (config.area_count < 1 || config.tasks < 1 || config.capacity < 1 ||
      config.area_pop_lo < 1 || config.area_pop_hi < config.area_pop_lo) {
    throw ParameterError("invalid mpft generation parameters");
  }
  Rng rng(config.seed);

  // Near-square grid of areas over the user area, row-major.
  const int cols = static_cast<int>(std::ceil(std::sqrt(config.area_count)));
  const int rows = (config.area_count + cols - 1) / cols;
  const double w = (config.user_area.x1 - config.user_area.x0) / cols;
  const double h = (config.user_area.y1 - config.user_area.y0) / rows;

  MpftInstance inst;
  const std::int64_t demand =
      static_cast<std::int64_t>(config.tasks) * config.capacity;
  std::vector<int> pops(config.area_count);
  bool feasible = false;
  for (int attempt = 0; attempt < 100 && !feasible; ++attempt) {
    std::int64_t supply = 0;
    for (int i = 0; i < config.area_count; ++i) {
      pops[i] = rng.uniform_int(config.area_pop_lo, config.area_pop_hi);
      supply += pops[i];
    }
    feasible = supply >= demand;
  }
  if (!feasible) {
    throw ParameterError(
        "could not sample area populations covering the total demand");
  }
  for (int i = 0; i < config.area_count; ++i) {
    const int r = i / cols;
    const int c = i % cols;
    Location centroid;
    centroid.mode = config.coord_mode;
    centroid.x = config.user_area.x0 + (c + 0.5) * w;
    centroid.y = config.user_area.y0 + (r + 0.5) * h;
    const double incentive =
        config.incentive_lo * config.area_pop_hi / static_cast<double>(pops[i]);
    inst.areas.push_back({i, centroid, pops[i], incentive});
  }
  for (int j = 0; j < config.tasks; ++j) {
    inst.tasks.push_back(
        {j, draw_point(rng, config.coord_mode, config.user_area), config.capacity});
  }
  inst.dist.assign(inst.areas.size(), std::vector<double>(inst.tasks.size()));
  for (std::size_t i = 0; i < inst.areas.size(); ++i) {
    for (std::size_t j = 0; j < inst.tasks.size(); ++j) {
      inst.dist[i][j] = distance(inst.areas[i].loc, inst.tasks[j].loc);
    }
  }
  validate(inst);
  return inst;
}

ScenarioInstance generate(const ScenarioConfig& config) {
  ScenarioInstance s;
  s.config = config;
  if (config.mode == ScenarioMode::fpmt) {
    s.fpmt = generate_fpmt(config);
  } else {
    s.mpft = generate_mpft(config);
  }
  return s;
}

namespace {

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return *it;
}

json config_to_json(const ScenarioConfig& c) {
  return json{
      {"seed", c.seed},
      {"mode", c.mode == ScenarioMode::fpmt ? "fpmt" : "mpft"},
      {"participants", c.participants},
      {"tasks", c.tasks},
      {"quota", c.quota},
      {"capacity", c.capacity},
      {"distribution", c.distribution == TaskDistribution::compact ? "compact"
                       : c.distribution == TaskDistribution::scattered
                           ? "scattered"
                           : "hybrid"},
      {"coord_mode",
       c.coord_mode == CoordMode::geographic ? "geographic" : "planar"},
      {"user_area",
       {c.user_area.x0, c.user_area.y0, c.user_area.x1, c.user_area.y1}},
      {"speed", c.speed},
      {"area_count", c.area_count},
      {"area_pop_range", {c.area_pop_lo, c.area_pop_hi}},
      {"incentive_range", {c.incentive_lo, c.incentive_hi}},
  };
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig c;
  c.seed = require(j, "seed").get<std::uint64_t>();
  const std::string mode = require(j, "mode").get<std::string>();
  if (mode == "fpmt") {
    c.mode = ScenarioMode::fpmt;
  } else if (mode == "mpft") {
    c.mode = ScenarioMode::mpft;
  } else {
    throw ParseError("unknown mode '" + mode + "'");
  }
  c.participants = require(j, "participants").get<int>();
  c.tasks = require(j, "tasks").get<int>();
  c.quota = require(j, "quota").get<int>();
  c.capacity = require(j, "capacity").get<int>();
  const std::string dist = require(j, "distribution").get<std::string>();
  if (dist == "compact") {
    c.distribution = TaskDistribution::compact;
  } else if (dist == "scattered") {
    c.distribution = TaskDistribution::scattered;
  } else if (dist == "hybrid") {
    c.distribution = TaskDistribution::hybrid;
  } else {
    throw ParseError("unknown distribution '" + dist + "'");
  }
  const std::string cm = require(j, "coord_mode").get<std::string>();
  if (cm == "geographic") {
    c.coord_mode = CoordMode::geographic;
  } else if (cm == "planar") {
    c.coord_mode = CoordMode::planar;
  } else {
    throw ParseError("unknown coord_mode '" + cm + "'");
  }
  const auto& box = require(j, "user_area");
  if (!box.is_array() || box.size() != 4) {
    throw ParseError("user_area must be [x0, y0, x1, y1]");
  }
  c.user_area = {box[0].get<double>(), box[1].get<double>(),
                 box[2].get<double>(), box[3].get<double>()};
  c.speed = require(j, "speed").get<double>();
  c.area_count = require(j, "area_count").get<int>();
  const auto& pr = require(j, "area_pop_range");
  c.area_pop_lo = pr.at(0).get<int>();
  c.area_pop_hi = pr.at(1).get<int>();
  const auto& ir = require(j, "incentive_range");
  c.incentive_lo = ir.at(0).get<double>();
  c.incentive_hi = ir.at(1).get<double>();
  return c;
}

CoordMode coord_mode_of(const ScenarioConfig& c) { return c.coord_mode; }

}  // namespace

std::string serialize_instance(const ScenarioInstance& inst) {
  json j;
  j["format_version"] = 1;
  j["rng"] = kRngAlgorithm;
  j["config"] = config_to_json(inst.config);
  if (inst.fpmt) {
    json f;
    f["quota"] = inst.fpmt->quota;
    f["participants"] = json::array();
    for (const auto& p : inst.fpmt->participants) {
      f["participants"].push_back({{"id", p.id}, {"x", p.loc.x}, {"y", p.loc.y}});
    }
    f["tasks"] = json::array();
    for (const auto& t : inst.fpmt->tasks) {
      f["tasks"].push_back(
          {{"id", t.id}, {"x", t.loc.x}, {"y", t.loc.y}, {"capacity", t.capacity}});
    }
    j["fpmt"] = std::move(f);
  }
  if (inst.mpft) {
    json m;
    m["areas"] = json::array();
    for (const auto& a : inst.mpft->areas) {
      m["areas"].push_back({{"id", a.id},
                            {"x", a.loc.x},
                            {"y", a.loc.y},
                            {"population", a.population},
                            {"incentive", a.incentive}});
    }
    m["tasks"] = json::array();
    for (const auto& t : inst.mpft->tasks) {
      m["tasks"].push_back(
          {{"id", t.id}, {"x", t.loc.x}, {"y", t.loc.y}, {"demand", t.demand}});
    }
    m["distance_matrix"] = inst.mpft->dist;
    j["mpft"] = std::move(m);
  }
  return j.dump(2) + "\n";
}

ScenarioInstance deserialize_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance file is not valid JSON: ") + e.what());
  }
  const int version = require(j, "format_version").get<int>();
  if (version != 1) {
    throw ParseError("unsupported format_version " + std::to_string(version));
  }
  ScenarioInstance inst;
  inst.config = config_from_json(require(j, "config"));
  const CoordMode mode = coord_mode_of(inst.config);
  try {
    if (j.contains("fpmt")) {
      const json& f = j["fpmt"];
      FpmtInstance fi;
      fi.quota = require(f, "quota").get<int>();
      for (const auto& p : require(f, "participants")) {
        fi.participants.push_back({require(p, "id").get<int>(),
                                   {mode, require(p, "x").get<double>(),
                                    require(p, "y").get<double>()}});
      }
      for (const auto& t : require(f, "tasks")) {
        fi.tasks.push_back({require(t, "id").get<int>(),
                            {mode, require(t, "x").get<double>(),
                             require(t, "y").get<double>()},
                            require(t, "capacity").get<int>()});
      }
      validate(fi);
      inst.fpmt = std::move(fi);
    }
    if (j.contains("mpft")) {
      const json& m = j["mpft"];
      MpftInstance mi;
      for (const auto& a : require(m, "areas")) {
        mi.areas.push_back({require(a, "id").get<int>(),
                            {mode, require(a, "x").get<double>(),
                             require(a, "y").get<double>()},
                            require(a, "population").get<int>(),
                            require(a, "incentive").get<double>()});
      }
      for (const auto& t : require(m, "tasks")) {
        mi.tasks.push_back({require(t, "id").get<int>(),
                            {mode, require(t, "x").get<double>(),
                             require(t, "y").get<double>()},
                            require(t, "demand").get<int>()});
      }
      mi.dist =
          require(m, "distance_matrix").get<std::vector<std::vector<double>>>();
      validate(mi);
      inst.mpft = std::move(mi);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance payload: ") + e.what());
  }
  if (!inst.fpmt && !inst.mpft) {
    throw ParseError("missing field 'fpmt' or 'mpft'");
  }
  return inst;
}

void save_instance(const ScenarioInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  out << serialize_instance(inst);
}

ScenarioInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_instance(buf.str());
}

std::vector<Location> load_tower_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line != "id,lat,lon") {
    throw ParseError("tower CSV must start with header 'id,lat,lon'");
  }
  std::vector<Location> towers;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string id, lat, lon;
    if (!std::getline(ss, id, ',') || !std::getline(ss, lat, ',') ||
        !std::getline(ss, lon)) {
      throw ParseError("tower CSV line " + std::to_string(line_no) +
                       " is not 'id,lat,lon'");
    }
    Location loc;
    loc.mode = CoordMode::geographic;
    try {
      loc.y = std::stod(lat);
      loc.x = std::stod(lon);
    } catch (const std::exception&) {
      throw ParseError("tower CSV line " + std::to_string(line_no) +
                       " has non-numeric coordinates");
    }
    validate(loc);
    towers.push_back(loc);
  }
  return towers;
}

}  // namespace mcs

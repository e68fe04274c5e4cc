#include "uavcov/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

using Json = nlohmann::ordered_json;

// Walks a parsed document and reports schema errors with their key path.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const Json& node() const { return node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError((path_.empty() ? std::string("document") : path_) + ": " + msg);
  }

  void expect_object(std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional = {}) const {
    if (!node_.is_object()) fail("expected an object");
    for (const auto& [key, unused] : node_.items()) {
      const bool known =
          std::find(required.begin(), required.end(), key) != required.end() ||
          std::find(optional.begin(), optional.end(), key) != optional.end();
      if (!known) fail("unknown key \"" + key + "\"");
    }
    for (std::string_view key : required) {
      if (!node_.contains(std::string(key))) fail("missing key \"" + std::string(key) + "\"");
    }
  }

  bool has(std::string_view key) const { return node_.contains(std::string(key)); }

  Reader at(std::string_view key) const {
    return {node_.at(std::string(key)), path_.empty() ? std::string(key)
                                                      : path_ + "." + std::string(key)};
  }

  std::vector<Reader> array() const {
    if (!node_.is_array()) fail("expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < node_.size(); ++i) {
      out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::int64_t integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected true or false");
    return node_.get<bool>();
  }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

 private:
  const Json& node_;
  std::string path_;
};

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + msg,
                     line, column);
  }
}

void check_version(const Reader& root) {
  if (root.at("version").integer() != kFormatVersion) {
    root.at("version").fail("unsupported version (expected " + std::to_string(kFormatVersion) +
                            ")");
  }
}

Json site_json(const Site& s) {
  return Json{{"id", s.id}, {"x", s.position.x}, {"y", s.position.y}, {"on_road", s.on_road}};
}

Site read_site(const Reader& r) {
  r.expect_object({"id", "x", "y", "on_road"});
  return {static_cast<int>(r.at("id").integer()), {r.at("x").number(), r.at("y").number()},
          r.at("on_road").boolean()};
}

Json end_json(const Site& s) {
  return Json{{"x", s.position.x}, {"y", s.position.y}, {"on_road", s.on_road}};
}

Site read_end(const Reader& r, int id) {
  r.expect_object({"x", "y"}, {"on_road"});
  return {id, {r.at("x").number(), r.at("y").number()},
          r.has("on_road") ? r.at("on_road").boolean() : true};
}

const char* end_name(CellEnd e) { return e == CellEnd::A ? "A" : "B"; }

CellEnd read_cell_end(const Reader& r) {
  const std::string s = r.string();
  if (s == "A") return CellEnd::A;
  if (s == "B") return CellEnd::B;
  r.fail("expected \"A\" or \"B\"");
}

const char* mode_name(FlightMode m) { return m == FlightMode::MultiRotor ? "M" : "F"; }

FlightMode read_mode(const Reader& r) {
  const std::string s = r.string();
  if (s == "M") return FlightMode::MultiRotor;
  if (s == "F") return FlightMode::FixedWing;
  r.fail("expected \"M\" or \"F\"");
}

Json path_json(const DubinsPath& p) {
  return Json{{"start",
               {{"x", p.start.position.x}, {"y", p.start.position.y}, {"heading", p.start.heading}}},
              {"turn_radius", p.turn_radius},
              {"word", std::string(to_string(p.word))},
              {"segments", {p.segment_lengths[0], p.segment_lengths[1], p.segment_lengths[2]}},
              {"total_length", p.total_length}};
}

DubinsPath read_path(const Reader& r) {
  r.expect_object({"start", "turn_radius", "word", "segments", "total_length"});
  const Reader start = r.at("start");
  start.expect_object({"x", "y", "heading"});
  DubinsPath p;
  p.start = {{start.at("x").number(), start.at("y").number()}, start.at("heading").number()};
  p.turn_radius = r.at("turn_radius").number();
  const auto word = dubins_word_from_string(r.at("word").string());
  if (!word) r.at("word").fail("unknown Dubins word");
  p.word = *word;
  const auto segs = r.at("segments").array();
  if (segs.size() != 3) r.at("segments").fail("expected three segment lengths");
  for (std::size_t i = 0; i < 3; ++i) p.segment_lengths[i] = segs[i].number();
  p.total_length = r.at("total_length").number();
  return p;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  const PlannerConfig& c = inst.config;
  Json cells = Json::array();
  for (const Cell& cell : inst.cells) {
    cells.push_back({{"index", cell.index}, {"a", end_json(cell.end_a)}, {"b", end_json(cell.end_b)}});
  }
  const Json doc{{"version", kFormatVersion},
                 {"config",
                  {{"t_takeoff", c.t_takeoff},
                   {"t_land", c.t_land},
                   {"recharge_rate_r", c.recharge_rate_r},
                   {"d_max", c.d_max},
                   {"levels_C", c.levels_C},
                   {"f_ratio", c.f_ratio},
                   {"turn_radius", c.turn_radius},
                   {"ugv_speed_ratio", c.ugv_speed_ratio},
                   {"fixed_wing_speed", c.fixed_wing_speed}}},
                 {"cells", cells}};
  return doc.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const Reader root(doc, "");
  root.expect_object({"version", "cells"}, {"config"});
  check_version(root);

  Instance inst;
  if (root.has("config")) {
    const Reader cfg = root.at("config");
    cfg.expect_object({}, {"t_takeoff", "t_land", "recharge_rate_r", "d_max", "levels_C",
                           "f_ratio", "turn_radius", "ugv_speed_ratio", "fixed_wing_speed"});
    PlannerConfig& c = inst.config;
    auto num = [&](const char* key, double& field) {
      if (cfg.has(key)) field = cfg.at(key).number();
    };
    num("t_takeoff", c.t_takeoff);
    num("t_land", c.t_land);
    num("recharge_rate_r", c.recharge_rate_r);
    num("d_max", c.d_max);
    num("f_ratio", c.f_ratio);
    num("turn_radius", c.turn_radius);
    num("ugv_speed_ratio", c.ugv_speed_ratio);
    num("fixed_wing_speed", c.fixed_wing_speed);
    if (cfg.has("levels_C")) {
      const std::int64_t levels = cfg.at("levels_C").integer();
      if (levels < 1 || levels > 1'000'000) cfg.at("levels_C").fail("out of range");
      c.levels_C = static_cast<int>(levels);
    }
    try {
      validate(c);
    } catch (const ContractViolation& e) {
      cfg.fail(e.what());
    }
  }

  for (const Reader& r : root.at("cells").array()) {
    r.expect_object({"index", "a", "b"});
    const std::int64_t index = r.at("index").integer();
    if (index < 0 || index > 10'000'000) r.at("index").fail("out of range");
    const int i = static_cast<int>(index);
    inst.cells.push_back({i, read_end(r.at("a"), 2 * i), read_end(r.at("b"), 2 * i + 1)});
  }
  if (inst.cells.empty()) root.at("cells").fail("at least one cell is required");
  try {
    validate_cells(inst.cells);
  } catch (const ContractViolation& e) {
    root.at("cells").fail(e.what());
  }
  return inst;
}

std::string plan_to_json(const Plan& plan) {
  Json order = Json::array();
  for (const CellVisit& v : plan.cell_order) {
    order.push_back({{"cell", v.cell}, {"entry", end_name(v.entry)}});
  }
  Json legs = Json::array();
  for (const Leg& l : plan.uav_legs) {
    Json j{{"kind", std::string(to_string(l.kind))}};
    if (l.kind == LegKind::Fly) j["mode"] = mode_name(l.mode);
    j["start_site"] = site_json(l.start_site);
    j["end_site"] = site_json(l.end_site);
    j["covers_cell"] = l.covers_cell;
    j["distance"] = l.distance;
    j["start_time"] = l.start_time;
    j["duration"] = l.duration;
    j["battery_before"] = l.battery_before;
    j["battery_after"] = l.battery_after;
    j["recharge_levels"] = l.recharge_levels;
    if (l.path) j["path"] = path_json(*l.path);
    legs.push_back(std::move(j));
  }
  Json ugv = Json::array();
  for (const UgvWaypoint& w : plan.ugv_waypoints) {
    ugv.push_back({{"site", site_json(w.site)}, {"deadline", w.deadline}, {"release", w.release}});
  }
  Json trace = Json::array();
  for (const BatteryEvent& e : plan.battery_trace) {
    trace.push_back({{"time", e.time}, {"event", e.event}, {"level", e.level}});
  }
  const Json doc{{"version", kFormatVersion},
                 {"total_time", plan.total_time},
                 {"cell_order", order},
                 {"uav_legs", legs},
                 {"ugv_waypoints", ugv},
                 {"battery_trace", trace}};
  return doc.dump(2) + "\n";
}

Plan plan_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const Reader root(doc, "");
  root.expect_object({"version", "total_time", "cell_order", "uav_legs", "ugv_waypoints",
                      "battery_trace"});
  check_version(root);

  auto level = [](const Reader& r) { return static_cast<Level>(r.integer()); };

  Plan plan;
  plan.total_time = root.at("total_time").number();
  for (const Reader& r : root.at("cell_order").array()) {
    r.expect_object({"cell", "entry"});
    plan.cell_order.push_back({static_cast<int>(r.at("cell").integer()), read_cell_end(r.at("entry"))});
  }
  for (const Reader& r : root.at("uav_legs").array()) {
    r.expect_object({"kind", "start_site", "end_site", "covers_cell", "distance", "start_time",
                     "duration", "battery_before", "battery_after", "recharge_levels"},
                    {"mode", "path"});
    Leg l;
    const auto kind = leg_kind_from_string(r.at("kind").string());
    if (!kind) r.at("kind").fail("unknown leg kind");
    l.kind = *kind;
    if (r.has("mode")) {
      if (l.kind != LegKind::Fly) r.at("mode").fail("only flights have a mode");
      l.mode = read_mode(r.at("mode"));
    } else if (l.kind == LegKind::Fly) {
      r.fail("missing key \"mode\"");
    }
    l.start_site = read_site(r.at("start_site"));
    l.end_site = read_site(r.at("end_site"));
    l.covers_cell = static_cast<int>(r.at("covers_cell").integer());
    l.distance = r.at("distance").number();
    l.start_time = r.at("start_time").number();
    l.duration = r.at("duration").number();
    l.battery_before = level(r.at("battery_before"));
    l.battery_after = level(r.at("battery_after"));
    l.recharge_levels = level(r.at("recharge_levels"));
    if (r.has("path")) l.path = read_path(r.at("path"));
    plan.uav_legs.push_back(std::move(l));
  }
  for (const Reader& r : root.at("ugv_waypoints").array()) {
    r.expect_object({"site", "deadline", "release"});
    plan.ugv_waypoints.push_back(
        {read_site(r.at("site")), r.at("deadline").number(), r.at("release").number()});
  }
  for (const Reader& r : root.at("battery_trace").array()) {
    r.expect_object({"time", "event", "level"});
    plan.battery_trace.push_back({r.at("time").number(), r.at("event").string(), level(r.at("level"))});
  }
  return plan;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("failed to read " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed to write " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

Plan load_plan(const std::filesystem::path& path) {
  try {
    return plan_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

}  // namespace uavcov

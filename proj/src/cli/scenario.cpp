#include "oppsyn/scenario.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "oppsyn/error.hpp"

namespace oppsyn {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class Reader {
 public:
  Reader(std::string section, std::string key, std::string value, std::size_t line)
      : section_(std::move(section)), key_(std::move(key)), value_(std::move(value)), line_(line) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("line " + std::to_string(line_) + ": [" + section_ + "] " + key_ + ": " +
                      why);
  }

  const std::string& text() const { return value_; }

  double real() const {
    double v{};
    auto [p, ec] = std::from_chars(value_.data(), value_.data() + value_.size(), v);
    if (ec != std::errc{} || p != value_.data() + value_.size()) fail("expected a number");
    return v;
  }

  std::uint64_t integer() const {
    std::uint64_t v{};
    auto [p, ec] = std::from_chars(value_.data(), value_.data() + value_.size(), v);
    if (ec != std::errc{} || p != value_.data() + value_.size())
      fail("expected a non-negative integer");
    return v;
  }

  bool boolean() const {
    const auto v = lower(value_);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail("expected true or false");
  }

  Cell cell() const {
    int x = 0, y = 0;
    char tail = 0;
    if (std::sscanf(value_.c_str(), " ( %d , %d ) %c", &x, &y, &tail) != 2)
      fail("expected a cell '(x,y)'");
    return {x, y};
  }

  std::vector<Direction> directions() const {
    std::vector<Direction> out;
    std::stringstream ss(value_);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      auto d = parse_direction(item == "Stay" || item == "stay" ? "STAY" : item);
      if (!d) fail("unknown direction '" + item + "'");
      out.push_back(*d);
    }
    return out;
  }

 private:
  std::string section_, key_, value_;
  std::size_t line_;
};

struct MapBlock {
  std::vector<std::string> rows;  // top row first
  std::size_t line = 0;
};

void apply_map(const MapBlock& map, GridworldConfig& grid, bool robot_set, bool adversary_set) {
  if (map.rows.empty()) throw FormatError("the map block is empty");
  const auto width = map.rows.front().size();
  for (const auto& r : map.rows)
    if (r.size() != width) throw FormatError("map rows must have equal length");
  grid.width = static_cast<int>(width);
  grid.height = static_cast<int>(map.rows.size());
  bool robot = false, adversary = false;
  for (std::size_t i = 0; i < map.rows.size(); ++i) {
    const int y = grid.height - 1 - static_cast<int>(i);
    for (std::size_t x = 0; x < width; ++x) {
      const char c = map.rows[i][x];
      const Cell cell{static_cast<int>(x), y};
      if (c == '.') continue;
      if (c == '#') {
        grid.obstacles.insert(cell);
      } else if (c == 'R') {
        if (robot) throw FormatError("the map has more than one 'R'");
        robot = true;
        if (!robot_set) grid.robot_start = cell;
      } else if (c == 'E') {
        if (adversary) throw FormatError("the map has more than one 'E'");
        adversary = true;
        if (!adversary_set) grid.adversary_start = cell;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        grid.goal_labels[std::string(1, c)].insert(cell);
      } else {
        throw FormatError(std::string("unknown map character '") + c + "'");
      }
    }
  }
  if (!robot && !robot_set) throw FormatError("no robot start: put 'R' on the map");
  if (!adversary && !adversary_set) throw FormatError("no adversary start: put 'E' on the map");
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  Scenario sc;
  std::optional<double> r;
  std::optional<MapBlock> map;
  bool robot_set = false, adversary_set = false, in_map = false;
  std::string section;

  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
    const std::string line = trim(raw);
    if (in_map) {
      if (!line.empty() && line.front() != '[' && line.find('=') == std::string::npos) {
        map->rows.push_back(line);
        continue;
      }
      in_map = false;
    }
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw FormatError("line " + std::to_string(lineno) + ": bad section");
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    if (line == "map:") {
      if (section != "grid") throw FormatError("the map block belongs in [grid]");
      if (map) throw FormatError("more than one map block");
      map = MapBlock{{}, lineno};
      in_map = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const Reader v(section, key, trim(line.substr(eq + 1)), lineno);

    if (section == "grid") {
      if (key == "interaction") {
        const auto t = lower(v.text());
        if (t == "none") sc.grid.interaction = Interaction::None;
        else if (t == "block") sc.grid.interaction = Interaction::Block;
        else v.fail("expected none or block");
      } else if (key == "corner_cutting") {
        sc.grid.corner_cutting = v.boolean();
      } else if (key == "robot_actions") {
        sc.grid.robot_actions = v.directions();
      } else if (key == "adversary_actions") {
        sc.grid.adversary_actions = v.directions();
      } else if (key == "robot_start") {
        sc.grid.robot_start = v.cell();
        robot_set = true;
      } else if (key == "adversary_start") {
        sc.grid.adversary_start = v.cell();
        adversary_set = true;
      } else {
        v.fail("unknown key");
      }
    } else if (section == "tasks") {
      if (key == "phi1") sc.phi1.formula = v.text();
      else if (key == "phi2") sc.phi2.formula = v.text();
      else if (key == "phi1_dfa") sc.phi1.dfa_path = base_dir / v.text();
      else if (key == "phi2_dfa") sc.phi2.dfa_path = base_dir / v.text();
      else if (key == "prune_automata") sc.prune_automata = v.boolean();
      else v.fail("unknown key");
    } else if (section == "payoff") {
      if (key == "r1") sc.payoff.r1 = v.real();
      else if (key == "r2") sc.payoff.r2 = v.real();
      else if (key == "r") r = v.real();
      else v.fail("unknown key");
    } else if (section == "adversary") {
      if (key == "mode") {
        const auto t = lower(v.text());
        if (t == "uniform") sc.adversary_mode = AdversaryMode::Uniform;
        else if (t == "seeded-random" || t == "random") sc.adversary_mode = AdversaryMode::SeededRandom;
        else v.fail("expected uniform or seeded-random");
      } else if (key == "seed") {
        sc.adversary_seed = v.integer();
      } else {
        v.fail("unknown key");
      }
    } else if (section == "planner") {
      if (key == "discount") sc.value_iteration.discount = v.real();
      else if (key == "tol") sc.value_iteration.tol = v.real();
      else if (key == "max_sweeps") sc.value_iteration.max_sweeps = v.integer();
      else v.fail("unknown key");
    } else if (section == "sim") {
      if (key == "episodes") sc.episodes = v.integer();
      else if (key == "seed") sc.sim_seed = v.integer();
      else if (key == "max_steps") sc.max_steps = v.integer();
      else v.fail("unknown key");
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": key outside a known section");
    }
  }

  if (!map) throw FormatError("scenario has no map block");
  apply_map(*map, sc.grid, robot_set, adversary_set);
  sc.grid.validate();
  for (const auto* t : {&sc.phi1, &sc.phi2}) {
    if (t->formula.has_value() == t->dfa_path.has_value())
      throw InvalidConfigError("each of phi1 and phi2 needs exactly one of a formula or a DFA file");
  }
  sc.payoff.r = r.value_or(sc.payoff.r1 + sc.payoff.r2);
  sc.payoff.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.parent_path());
}

}  // namespace oppsyn

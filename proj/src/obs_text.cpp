#include "skirmish/obs/obs_text.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

#include "skirmish/core/hash.hpp"
#include "skirmish/world/unit_catalog.hpp"

namespace skirmish {

double quantize(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  const double q = std::strtod(buf, nullptr);
  return q == 0.0 ? 0.0 : q;  // no negative zero
}

ObsData quantized(const ObsData& obs) {
  ObsData q = obs;
  q.own_position = {quantize(obs.own_position.x), quantize(obs.own_position.y)};
  q.own_health = quantize(obs.own_health);
  q.own_shield = quantize(obs.own_shield);
  q.own_sight_range = quantize(obs.own_sight_range);
  q.own_shoot_range = quantize(obs.own_shoot_range);
  for (auto* list : {&q.allies, &q.enemies}) {
    for (auto& e : *list) {
      e.position = {quantize(e.position.x), quantize(e.position.y)};
      e.distance = quantize(e.distance);
      e.health = quantize(e.health);
      e.shield = quantize(e.shield);
    }
  }
  return q;
}

namespace {

std::string real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", quantize(x));
  return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void render_entity(std::string& out, const EntityView& e) {
  out += e.is_ally ? "Ally #" : "Enemy #";
  out += std::to_string(e.id) + " (" + e.unit_type + "): distance " + real(e.distance) + ", position (" +
         real(e.position.x) + ", " + real(e.position.y) + "), health " + real(e.health) + ", shield " +
         real(e.shield) + ", can_attack: " + yes_no(e.can_attack);
  if (e.is_ally) out += ", last_action " + std::to_string(e.last_action);
  out += '\n';
}

void render_actions(std::string& out, const std::vector<int>& actions) {
  out += "Available actions: [";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(actions[i]);
  }
  out += "]\n";
}

/// Token reader over one line. Every failure names the line and what was expected.
class Cursor {
 public:
  Cursor(std::string_view line, int line_no) : rest_(line), line_no_(line_no) {}

  void lit(std::string_view s) {
    if (rest_.substr(0, s.size()) != s) fail("'" + std::string(s) + "'");
    rest_.remove_prefix(s.size());
  }

  double real() {
    std::size_t i = 0;
    if (i < rest_.size() && rest_[i] == '-') ++i;
    const std::size_t int_start = i;
    while (i < rest_.size() && is_digit(rest_[i])) ++i;
    const std::size_t int_len = i - int_start;
    if (int_len == 0 || (int_len > 1 && rest_[int_start] == '0')) fail("number with 4 decimals");
    if (i >= rest_.size() || rest_[i] != '.') fail("number with 4 decimals");
    ++i;
    for (int k = 0; k < 4; ++k, ++i) {
      if (i >= rest_.size() || !is_digit(rest_[i])) fail("number with 4 decimals");
    }
    if (i < rest_.size() && is_digit(rest_[i])) fail("number with 4 decimals");
    const std::string tok(rest_.substr(0, i));
    const double v = std::strtod(tok.c_str(), nullptr);
    if (tok[0] == '-' && v == 0.0) fail("number with 4 decimals (no negative zero)");
    rest_.remove_prefix(i);
    return v;
  }

  int integer() {
    std::size_t i = 0;
    while (i < rest_.size() && is_digit(rest_[i])) ++i;
    if (i == 0 || (i > 1 && rest_[0] == '0') || i > 9) fail("non-negative integer");
    const int v = std::atoi(std::string(rest_.substr(0, i)).c_str());
    rest_.remove_prefix(i);
    return v;
  }

  bool yes_no() {
    if (rest_.substr(0, 3) == "yes") {
      rest_.remove_prefix(3);
      return true;
    }
    if (rest_.substr(0, 2) == "no") {
      rest_.remove_prefix(2);
      return false;
    }
    fail("'yes' or 'no'");
  }

  std::string unit_type() {
    std::size_t i = 0;
    while (i < rest_.size() && rest_[i] >= 'a' && rest_[i] <= 'z') ++i;
    const std::string name(rest_.substr(0, i));
    if (!unit_kind_from_string(name)) fail("unit type name");
    rest_.remove_prefix(i);
    return name;
  }

  void end() {
    if (!rest_.empty()) fail("end of line");
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = rest_.empty() ? "end of line" : "'" + std::string(rest_.substr(0, 24)) + "'";
    throw ObsParseError(line_no_, expected, "found " + found);
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  std::string_view rest_;
  int line_no_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      const auto nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        lines_.push_back(text.substr(start));
        break;
      }
      lines_.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  ParsedObs run() {
    ParsedObs out;
    ObsData& o = out.obs;
    {
      Cursor c = next("'Agent #'");
      c.lit("Agent #");
      o.agent_id = c.integer();
      c.lit(" (");
      o.own_unit_type = c.unit_type();
      c.lit(")");
      c.end();
    }
    if (peek_starts("Available actions: ")) {
      o.alive = false;
      const int line_no = pos_ + 1;
      o.available_actions = actions();
      if (o.available_actions != std::vector<int>{0}) {
        throw ObsParseError(line_no, "'[0]'", "a dead agent's only action is 0");
      }
      out.warnings = trailing();
      return out;
    }
    o.own_health = scalar_line("Health: ");
    o.own_shield = scalar_line("Shield: ");
    {
      Cursor c = next("'Position: '");
      c.lit("Position: (");
      o.own_position.x = c.real();
      c.lit(", ");
      o.own_position.y = c.real();
      c.lit(")");
      c.end();
    }
    o.own_sight_range = scalar_line("Sight range: ");
    o.own_shoot_range = scalar_line("Shoot range: ");
    for (Direction d : kDirections) {
      const std::string prefix = std::string("Can move ") + direction_name(d) + ": ";
      Cursor c = next("'" + prefix + "'");
      c.lit(prefix);
      o.can_move[static_cast<std::size_t>(d)] = c.yes_no();
      c.end();
    }
    {
      Cursor c = next("'Last action: '");
      c.lit("Last action: ");
      o.last_action = c.integer();
      c.end();
    }
    std::vector<int> entity_lines;
    while (peek_starts("Ally #")) {
      entity_lines.push_back(pos_ + 1);
      o.allies.push_back(entity(true));
    }
    while (peek_starts("Enemy #")) {
      entity_lines.push_back(pos_ + 1);
      o.enemies.push_back(entity(false));
    }
    if (!peek_starts("Available actions: ")) {
      Cursor c = next("'Ally #', 'Enemy #' or 'Available actions: '");
      c.fail(o.enemies.empty() ? "'Ally #', 'Enemy #' or 'Available actions: '" : "'Enemy #' or 'Available actions: '");
    }
    const int actions_line = pos_ + 1;
    o.available_actions = actions();
    check(o, actions_line, entity_lines);
    out.warnings = trailing();
    return out;
  }

 private:
  Cursor next(const std::string& expected) {
    if (pos_ >= lines_.size()) throw ObsParseError(static_cast<int>(pos_) + 1, expected, "found end of text");
    const int line_no = static_cast<int>(pos_) + 1;
    return Cursor(lines_[pos_++], line_no);
  }

  bool peek_starts(std::string_view prefix) const {
    return pos_ < lines_.size() && lines_[pos_].substr(0, prefix.size()) == prefix;
  }

  double scalar_line(const std::string& prefix) {
    Cursor c = next("'" + prefix + "'");
    c.lit(prefix);
    const double v = c.real();
    c.end();
    return v;
  }

  EntityView entity(bool ally) {
    Cursor c = next(ally ? "'Ally #'" : "'Enemy #'");
    EntityView e;
    e.is_ally = ally;
    c.lit(ally ? "Ally #" : "Enemy #");
    e.id = c.integer();
    c.lit(" (");
    e.unit_type = c.unit_type();
    c.lit("): distance ");
    e.distance = c.real();
    c.lit(", position (");
    e.position.x = c.real();
    c.lit(", ");
    e.position.y = c.real();
    c.lit("), health ");
    e.health = c.real();
    c.lit(", shield ");
    e.shield = c.real();
    c.lit(", can_attack: ");
    e.can_attack = c.yes_no();
    if (ally) {
      c.lit(", last_action ");
      e.last_action = c.integer();
    }
    c.end();
    return e;
  }

  std::vector<int> actions() {
    Cursor c = next("'Available actions: '");
    c.lit("Available actions: [");
    std::vector<int> out;
    if (!peek_close(c)) {
      out.push_back(c.integer());
      while (!peek_close(c)) {
        c.lit(", ");
        out.push_back(c.integer());
      }
    }
    c.lit("]");
    c.end();
    return out;
  }

  static bool peek_close(Cursor c) {
    try {
      c.lit("]");
      return true;
    } catch (const ObsParseError&) {
      return false;
    }
  }

  int trailing() {
    const int n = static_cast<int>(lines_.size() - pos_);
    pos_ = lines_.size();
    return n;
  }

  static void check(const ObsData& o, int actions_line, const std::vector<int>& entity_lines) {
    const auto& a = o.available_actions;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i] <= a[i - 1]) throw ObsParseError(actions_line, "ascending action list", "actions not sorted or repeated");
    }
    if (a.empty() || a.front() != action::kStop) {
      throw ObsParseError(actions_line, "action 1", "a living agent can always stop");
    }
    for (Direction d : kDirections) {
      if (o.can_move[static_cast<std::size_t>(d)] != o.has_action(move_action(d))) {
        throw ObsParseError(actions_line, std::string("consistency with 'Can move ") + direction_name(d) + "'",
                            "move flag and action list disagree");
      }
    }
    std::size_t k = 0;
    for (const auto* list : {&o.allies, &o.enemies}) {
      int prev = -1;
      for (const auto& e : *list) {
        const int line = entity_lines[k++];
        if (e.id <= prev) throw ObsParseError(line, "ascending entity id", "entity ids out of order");
        prev = e.id;
        if (std::fabs(e.distance - e.position.norm()) > 2e-4) {
          throw ObsParseError(line, "distance matching position", "distance disagrees with position");
        }
        if (e.can_attack && !o.has_action(action::target(e.id))) {
          throw ObsParseError(line, "can_attack: no", "target action absent from available actions");
        }
      }
    }
  }

  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

ObsParseError::ObsParseError(int line, std::string expected, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": expected " + expected + ", " + detail),
      line_(line),
      expected_(std::move(expected)) {}

std::string render_obs(const ObsData& o) {
  std::string out = "Agent #" + std::to_string(o.agent_id) + " (" + o.own_unit_type + ")\n";
  if (!o.alive) {
    render_actions(out, o.available_actions);
    return out;
  }
  out += "Health: " + real(o.own_health) + "\n";
  out += "Shield: " + real(o.own_shield) + "\n";
  out += "Position: (" + real(o.own_position.x) + ", " + real(o.own_position.y) + ")\n";
  out += "Sight range: " + real(o.own_sight_range) + "\n";
  out += "Shoot range: " + real(o.own_shoot_range) + "\n";
  for (Direction d : kDirections) {
    out += std::string("Can move ") + direction_name(d) + ": " + yes_no(o.can_move[static_cast<std::size_t>(d)]) + "\n";
  }
  out += "Last action: " + std::to_string(o.last_action) + "\n";
  for (const auto& e : o.allies) render_entity(out, e);
  for (const auto& e : o.enemies) render_entity(out, e);
  render_actions(out, o.available_actions);
  return out;
}

ParsedObs parse_obs_text(std::string_view text) { return Parser(text).run(); }

std::uint64_t obs_digest(const ObsData& obs) { return fnv1a(render_obs(obs)); }

}  // namespace skirmish

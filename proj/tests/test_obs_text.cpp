#include <doctest.h>

#include "oracles.hpp"
#include "skirmish/obs/obs_text.hpp"

using namespace skirmish;

namespace {

ObsData sample() {
  ObsData o;
  o.agent_id = 2;
  o.own_unit_type = "stalker";
  o.own_health = 0.75;
  o.own_shield = 0.5;
  o.own_position = {0.25, 0.5};
  o.own_sight_range = 9;
  o.own_shoot_range = 6;
  o.can_move = {true, true, false, true};
  o.last_action = 6;
  EntityView a{true, 0, "zealot", {0.3, -0.4}, 0.5, 1.0, 0.2, false, 4};
  EntityView e{false, 1, "colossus", {0.6, 0.0}, 0.6, 0.9, 1.0, true, 0};
  o.allies = {a};
  o.enemies = {e};
  o.available_actions = {1, 2, 3, 5, 7};
  return o;
}

std::string replace_line(const std::string& text, int line, const std::string& with) {
  std::string out;
  int n = 1;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    const std::string cur = text.substr(start, nl - start);
    out += (n == line ? with : cur) + "\n";
    ++n;
    start = nl + 1;
  }
  return out;
}

int error_line(const std::string& text) {
  try {
    parse_obs(text);
  } catch (const ObsParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("canonical text of a known observation") {
  const std::string expected =
      "Agent #2 (stalker)\n"
      "Health: 0.7500\n"
      "Shield: 0.5000\n"
      "Position: (0.2500, 0.5000)\n"
      "Sight range: 9.0000\n"
      "Shoot range: 6.0000\n"
      "Can move North: yes\n"
      "Can move South: yes\n"
      "Can move East: no\n"
      "Can move West: yes\n"
      "Last action: 6\n"
      "Ally #0 (zealot): distance 0.5000, position (0.3000, -0.4000), health 1.0000, shield 0.2000, can_attack: no, "
      "last_action 4\n"
      "Enemy #1 (colossus): distance 0.6000, position (0.6000, 0.0000), health 0.9000, shield 1.0000, can_attack: yes\n"
      "Available actions: [1, 2, 3, 5, 7]\n";
  CHECK(render_obs(sample()) == expected);
  CHECK(parse_obs(expected) == sample());
}

TEST_CASE("random observations survive a round trip") {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    const ObsData o = oracle::random_obs(rng);
    const std::string text = render_obs(o);
    const ObsData back = parse_obs(text);
    REQUIRE(back == quantized(o));
    REQUIRE(render_obs(back) == text);
  }
}

TEST_CASE("world observations survive a round trip") {
  for (const auto& name : builtin_scenario_names()) {
    const auto w = spawn_scenario(builtin_scenario(name), 3);
    for (int i = 0; i < static_cast<int>(w.allies.size()); ++i) {
      const ObsData o = observe(w, i);
      CHECK(parse_obs(render_obs(o)) == quantized(o));
    }
  }
}

TEST_CASE("quantize never yields negative zero") {
  CHECK_FALSE(std::signbit(quantize(-0.00004)));
  CHECK(quantize(-0.00005) == doctest::Approx(-0.0001));
  CHECK(quantize(0.12344999) == 0.1234);
  ObsData o = sample();
  o.own_position.x = -1e-7;
  CHECK(render_obs(o).find("-0.0000") == std::string::npos);
}

TEST_CASE("errors name the offending line") {
  const std::string good = render_obs(sample());
  CHECK(error_line(replace_line(good, 2, "Health: 0.75")) == 2);
  CHECK(error_line(replace_line(good, 2, "Health: 00.7500")) == 2);
  CHECK(error_line(replace_line(good, 4, "Position: (-0.0000, 0.5000)")) == 4);
  CHECK(error_line(replace_line(good, 1, "Agent #2 (ultralisk)")) == 1);
  CHECK(error_line(replace_line(good, 8, "Can move East: maybe")) == 8);
  // Move flag disagrees with the action list.
  CHECK(error_line(replace_line(good, 9, "Can move East: yes")) == 14);
  // Distance not matching position.
  CHECK(error_line(replace_line(good, 13,
                                "Enemy #1 (colossus): distance 0.9000, position (0.6000, 0.0000), health 0.9000, "
                                "shield 1.0000, can_attack: yes")) == 13);
  CHECK(error_line(replace_line(good, 14, "Available actions: [2, 1]")) == 14);
  CHECK(error_line(replace_line(good, 14, "Available actions: [2, 3, 5, 7]")) == 14);
  CHECK(error_line(good.substr(0, good.find("Available"))) == 14);
  try {
    parse_obs(replace_line(good, 2, "Health: x"));
    FAIL("expected a parse error");
  } catch (const ObsParseError& e) {
    CHECK(e.expected() == "number with 4 decimals");
  }
}

TEST_CASE("trailing lines are counted, not fatal") {
  const auto parsed = parse_obs_text(render_obs(sample()) + "extra\nmore\n");
  CHECK(parsed.warnings == 2);
  CHECK(parsed.obs == sample());
}

TEST_CASE("dead agents render as header plus no-op") {
  ObsData o;
  o.agent_id = 4;
  o.own_unit_type = "marine";
  o.alive = false;
  o.available_actions = {0};
  const std::string text = render_obs(o);
  CHECK(text == "Agent #4 (marine)\nAvailable actions: [0]\n");
  CHECK(parse_obs(text) == o);
  CHECK(error_line("Agent #4 (marine)\nAvailable actions: [0, 1]\n") == 2);
}

TEST_CASE("mutated text either parses cleanly or raises ObsParseError") {
  Rng rng(3);
  const char alphabet[] = "0123456789.-,:() #[]abcdefnoyes\n";
  int rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string text = render_obs(oracle::random_obs(rng));
    const int edits = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < edits && !text.empty(); ++k) {
      const std::size_t at = rng.below(text.size());
      switch (rng.below(3)) {
        case 0:
          text[at] = alphabet[rng.below(sizeof alphabet - 1)];
          break;
        case 1:
          text.erase(at, 1);
          break;
        default:
          text.insert(at, 1, alphabet[rng.below(sizeof alphabet - 1)]);
      }
    }
    try {
      const ParsedObs p = parse_obs_text(text);
      // Whatever parses must render back to a parseable canonical form.
      CHECK(parse_obs(render_obs(p.obs)) == p.obs);
    } catch (const ObsParseError& e) {
      CHECK(e.line() >= 1);
      ++rejected;
    }
  }
  CHECK(rejected > 2000);
}

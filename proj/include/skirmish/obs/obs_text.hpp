#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "skirmish/obs/obs_data.hpp"

namespace skirmish {

/// Rounds to the 4 decimals the text format carries.
double quantize(double x);
/// Copy of `obs` with every real field quantized; what parse(render(obs)) returns.
ObsData quantized(const ObsData& obs);

/// Canonical text form. See docs/obs_grammar.ebnf.
std::string render_obs(const ObsData& obs);

class ObsParseError : public std::runtime_error {
 public:
  ObsParseError(int line, std::string expected, const std::string& detail);
  int line() const { return line_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  std::string expected_;
};

struct ParsedObs {
  ObsData obs;
  /// Lines after "Available actions" that were ignored.
  int warnings = 0;
};

ParsedObs parse_obs_text(std::string_view text);
inline ObsData parse_obs(std::string_view text) { return parse_obs_text(text).obs; }

/// Stable digest of the rendered text, used in replays.
std::uint64_t obs_digest(const ObsData& obs);

}  // namespace skirmish

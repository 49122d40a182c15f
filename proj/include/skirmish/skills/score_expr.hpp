#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skirmish/obs/obs_data.hpp"

namespace skirmish {

enum class ValueType { kNumber, kBool, kString, kEntity };
const char* to_string(ValueType t);

/// Node of a type-checked score expression.
struct ExprNode {
  enum class Kind { kNumber, kBool, kString, kParam, kEntity, kField, kCall, kUnary, kBinary, kIf };
  Kind kind = Kind::kNumber;
  ValueType type = ValueType::kNumber;
  double number = 0.0;
  /// Literal text, parameter name, entity name ("unit"/"self"), field path,
  /// builtin name or operator spelling depending on kind.
  std::string text;
  /// For kField: the entity the field is read from.
  std::string entity;
  std::vector<std::shared_ptr<const ExprNode>> kids;
  /// Byte offset in the source text.
  int pos = 0;
};

class ScoreExprError : public std::runtime_error {
 public:
  ScoreExprError(int pos, const std::string& msg)
      : std::runtime_error("at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  int pos() const { return pos_; }

 private:
  int pos_;
};

/// A parsed, type-checked expression whose value is a number.
class ScoreExpr {
 public:
  ScoreExpr() = default;

  const std::string& source() const { return source_; }
  const ExprNode& root() const { return *root_; }
  bool empty() const { return root_ == nullptr; }
  /// Names referenced as $name.
  std::set<std::string> params() const;
  /// Fully parenthesised form. Equal canonical strings mean equal trees.
  std::string canonical() const;

  friend ScoreExpr parse_score_expr(std::string_view text);

 private:
  std::string source_;
  std::shared_ptr<const ExprNode> root_;
};

/// Throws ScoreExprError naming the byte offset on syntax errors, unknown
/// identifiers, arity mismatches and type errors.
ScoreExpr parse_score_expr(std::string_view text);

using PriorityTable = std::map<std::string, double>;
using CounterTable = std::map<std::string, std::map<std::string, double>>;

/// Read-only inputs to evaluation. `obs` supplies self, allies and enemies.
struct TacticContext {
  const ObsData* obs = nullptr;
  const PriorityTable* priorities = nullptr;
  const CounterTable* counters = nullptr;
  const std::map<std::string, double>* params = nullptr;
};

struct EvalDiagnostics {
  int division_by_zero = 0;
};

/// Pure. Division by zero yields 0 and bumps diag->division_by_zero.
double eval_score(const ScoreExpr& expr, const EntityView& unit, const TacticContext& ctx,
                  EvalDiagnostics* diag = nullptr);

bool is_melee_type(std::string_view unit_type);
/// Base priority from the table, 5 when absent.
double priority_of(const PriorityTable& table, std::string_view unit_type);
/// counters[own][target], 1 when absent.
double matchup_of(const CounterTable& table, std::string_view own, std::string_view target);

}  // namespace skirmish

#include "skirmish/skills/score_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace skirmish {

const char* to_string(ValueType t) {
  switch (t) {
    case ValueType::kNumber:
      return "number";
    case ValueType::kBool:
      return "bool";
    case ValueType::kString:
      return "string";
    case ValueType::kEntity:
      return "entity";
  }
  return "?";
}

bool is_melee_type(std::string_view t) { return t == "zealot" || t == "zergling" || t == "baneling"; }

double priority_of(const PriorityTable& table, std::string_view unit_type) {
  auto it = table.find(std::string(unit_type));
  return it == table.end() ? 5.0 : it->second;
}

double matchup_of(const CounterTable& table, std::string_view own, std::string_view target) {
  auto row = table.find(std::string(own));
  if (row == table.end()) return 1.0;
  auto it = row->second.find(std::string(target));
  return it == row->second.end() ? 1.0 : it->second;
}

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

struct FieldSpec {
  const char* name;
  ValueType type;
};

constexpr FieldSpec kUnitFields[] = {
    {"health", ValueType::kNumber},     {"shield", ValueType::kNumber},      {"distance", ValueType::kNumber},
    {"id", ValueType::kNumber},         {"last_action", ValueType::kNumber}, {"can_attack", ValueType::kBool},
    {"is_ally", ValueType::kBool},      {"type", ValueType::kString},        {"position.x", ValueType::kNumber},
    {"position.y", ValueType::kNumber},
};
constexpr FieldSpec kSelfFields[] = {
    {"health", ValueType::kNumber},      {"shield", ValueType::kNumber},      {"id", ValueType::kNumber},
    {"last_action", ValueType::kNumber}, {"sight_range", ValueType::kNumber}, {"shoot_range", ValueType::kNumber},
    {"type", ValueType::kString},        {"position.x", ValueType::kNumber},  {"position.y", ValueType::kNumber},
};

struct Builtin {
  const char* name;
  std::vector<ValueType> args;
  ValueType result;
};

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = {
      {"priority", {ValueType::kEntity}, ValueType::kNumber},
      {"matchup", {ValueType::kEntity, ValueType::kEntity}, ValueType::kNumber},
      {"allies_attacking", {ValueType::kEntity}, ValueType::kNumber},
      {"cluster_size", {ValueType::kEntity, ValueType::kNumber}, ValueType::kNumber},
      {"is_melee", {ValueType::kEntity}, ValueType::kBool},
      {"ranged_ally_factor", {ValueType::kEntity}, ValueType::kNumber},
      {"max", {ValueType::kNumber, ValueType::kNumber}, ValueType::kNumber},
      {"min", {ValueType::kNumber, ValueType::kNumber}, ValueType::kNumber},
      {"abs", {ValueType::kNumber}, ValueType::kNumber},
  };
  return table;
}

const Builtin* find_builtin(std::string_view name) {
  for (const auto& b : builtins()) {
    if (name == b.name) return &b;
  }
  return nullptr;
}

enum class Tok { kNumber, kIdent, kParam, kString, kOp, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  int pos = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    Token t;
    t.pos = static_cast<int>(i);
    if (i >= s.size()) {
      t.kind = Tok::kEnd;
      out.push_back(t);
      return out;
    }
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      t.kind = Tok::kNumber;
      t.text = std::string(s.substr(i, j - i));
      t.number = std::strtod(t.text.c_str(), nullptr);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j == i + 1) throw ScoreExprError(t.pos, "expected parameter name after '$'");
      t.kind = Tok::kParam;
      t.text = std::string(s.substr(i + 1, j - i - 1));
      i = j;
    } else if (c == '"') {
      const auto close = s.find('"', i + 1);
      if (close == std::string_view::npos) throw ScoreExprError(t.pos, "unterminated string literal");
      t.kind = Tok::kString;
      t.text = std::string(s.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      static constexpr const char* kTwo[] = {"<=", ">=", "==", "!="};
      t.kind = Tok::kOp;
      for (const char* op : kTwo) {
        if (s.substr(i, 2) == op) t.text = op;
      }
      if (t.text.empty()) {
        if (std::string_view("()+-*/^<>,.").find(c) == std::string_view::npos) {
          throw ScoreExprError(t.pos, std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(1, c);
      }
      i += t.text.size();
    }
    out.push_back(std::move(t));
  }
}

bool is_keyword(std::string_view w) {
  return w == "if" || w == "then" || w == "else" || w == "and" || w == "or" || w == "not" || w == "true" ||
         w == "false";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  NodePtr parse() {
    auto root = expr();
    if (peek().kind != Tok::kEnd) fail("end of expression");
    if (root->type != ValueType::kNumber) {
      throw ScoreExprError(root->pos, std::string("score must be a number, got ") + to_string(root->type));
    }
    return root;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }
  bool is_op(std::string_view op) const { return peek().kind == Tok::kOp && peek().text == op; }
  bool is_word(std::string_view w) const { return peek().kind == Tok::kIdent && peek().text == w; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ScoreExprError(t.pos, "expected " + expected + ", found " + found);
  }

  void expect_op(std::string_view op) {
    if (!is_op(op)) fail("'" + std::string(op) + "'");
    take();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("'" + std::string(w) + "'");
    take();
  }

  static void require(const NodePtr& n, ValueType t, const std::string& what) {
    if (n->type != t) {
      throw ScoreExprError(n->pos, what + " needs " + to_string(t) + ", got " + to_string(n->type));
    }
  }

  static NodePtr binary(std::string op, NodePtr a, NodePtr b, ValueType type, int pos) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::kBinary;
    n->text = std::move(op);
    n->type = type;
    n->pos = pos;
    n->kids = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr expr() {
    if (!is_word("if")) return or_expr();
    const int pos = take().pos;
    auto c = expr();
    require(c, ValueType::kBool, "'if' condition");
    expect_word("then");
    auto a = expr();
    expect_word("else");
    auto b = expr();
    if (a->type != b->type) {
      throw ScoreExprError(b->pos, std::string("'else' branch is ") + to_string(b->type) + " but 'then' branch is " +
                                       to_string(a->type));
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::kIf;
    n->type = a->type;
    n->pos = pos;
    n->kids = {c, a, b};
    return n;
  }

  NodePtr or_expr() {
    auto lhs = and_expr();
    while (is_word("or")) {
      const int pos = take().pos;
      auto rhs = and_expr();
      require(lhs, ValueType::kBool, "'or'");
      require(rhs, ValueType::kBool, "'or'");
      lhs = binary("or", lhs, rhs, ValueType::kBool, pos);
    }
    return lhs;
  }

  NodePtr and_expr() {
    auto lhs = not_expr();
    while (is_word("and")) {
      const int pos = take().pos;
      auto rhs = not_expr();
      require(lhs, ValueType::kBool, "'and'");
      require(rhs, ValueType::kBool, "'and'");
      lhs = binary("and", lhs, rhs, ValueType::kBool, pos);
    }
    return lhs;
  }

  NodePtr not_expr() {
    if (!is_word("not")) return comparison();
    const int pos = take().pos;
    auto operand = not_expr();
    require(operand, ValueType::kBool, "'not'");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::kUnary;
    n->text = "not";
    n->type = ValueType::kBool;
    n->pos = pos;
    n->kids = {operand};
    return n;
  }

  NodePtr comparison() {
    auto lhs = additive();
    for (const char* op : {"<=", ">=", "==", "!=", "<", ">"}) {
      if (!is_op(op)) continue;
      const int pos = take().pos;
      auto rhs = additive();
      const bool equality = std::string_view(op) == "==" || std::string_view(op) == "!=";
      if (equality) {
        if (lhs->type != rhs->type || lhs->type == ValueType::kEntity) {
          throw ScoreExprError(pos, std::string("cannot compare ") + to_string(lhs->type) + " with " +
                                        to_string(rhs->type));
        }
      } else {
        require(lhs, ValueType::kNumber, std::string("'") + op + "'");
        require(rhs, ValueType::kNumber, std::string("'") + op + "'");
      }
      if (peek().kind == Tok::kOp && (peek().text == "<" || peek().text == ">" || peek().text == "<=" ||
                                      peek().text == ">=" || peek().text == "==" || peek().text == "!=")) {
        throw ScoreExprError(peek().pos, "comparisons do not chain; use 'and'");
      }
      return binary(op, lhs, rhs, ValueType::kBool, pos);
    }
    return lhs;
  }

  NodePtr additive() {
    auto lhs = multiplicative();
    while (is_op("+") || is_op("-")) {
      const Token& t = take();
      auto rhs = multiplicative();
      require(lhs, ValueType::kNumber, "'" + t.text + "'");
      require(rhs, ValueType::kNumber, "'" + t.text + "'");
      lhs = binary(t.text, lhs, rhs, ValueType::kNumber, t.pos);
    }
    return lhs;
  }

  NodePtr multiplicative() {
    auto lhs = unary();
    while (is_op("*") || is_op("/")) {
      const Token& t = take();
      auto rhs = unary();
      require(lhs, ValueType::kNumber, "'" + t.text + "'");
      require(rhs, ValueType::kNumber, "'" + t.text + "'");
      lhs = binary(t.text, lhs, rhs, ValueType::kNumber, t.pos);
    }
    return lhs;
  }

  NodePtr unary() {
    if (!is_op("-")) return power();
    const int pos = take().pos;
    auto operand = unary();
    require(operand, ValueType::kNumber, "unary '-'");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::kUnary;
    n->text = "-";
    n->type = ValueType::kNumber;
    n->pos = pos;
    n->kids = {operand};
    return n;
  }

  NodePtr power() {
    auto base = primary();
    if (!is_op("^")) return base;
    const int pos = take().pos;
    auto exponent = unary();  // right associative
    require(base, ValueType::kNumber, "'^'");
    require(exponent, ValueType::kNumber, "'^'");
    return binary("^", base, exponent, ValueType::kNumber, pos);
  }

  NodePtr primary() {
    const Token& t = peek();
    auto n = std::make_shared<ExprNode>();
    n->pos = t.pos;
    switch (t.kind) {
      case Tok::kNumber:
        n->kind = ExprNode::Kind::kNumber;
        n->number = t.number;
        take();
        return n;
      case Tok::kString:
        n->kind = ExprNode::Kind::kString;
        n->type = ValueType::kString;
        n->text = t.text;
        take();
        return n;
      case Tok::kParam:
        n->kind = ExprNode::Kind::kParam;
        n->text = t.text;
        take();
        return n;
      case Tok::kOp:
        if (t.text == "(") {
          take();
          auto inner = expr();
          expect_op(")");
          return inner;
        }
        fail("a value");
      case Tok::kEnd:
        fail("a value");
      case Tok::kIdent:
        break;
    }
    const std::string word = t.text;
    take();
    if (word == "true" || word == "false") {
      n->kind = ExprNode::Kind::kBool;
      n->type = ValueType::kBool;
      n->number = word == "true" ? 1.0 : 0.0;
      return n;
    }
    if (is_keyword(word)) throw ScoreExprError(n->pos, "unexpected keyword '" + word + "'");
    if (word == "unit" || word == "self") {
      if (!is_op(".")) {
        n->kind = ExprNode::Kind::kEntity;
        n->type = ValueType::kEntity;
        n->text = word;
        return n;
      }
      std::string path;
      int field_pos = -1;
      while (is_op(".")) {
        take();
        if (peek().kind != Tok::kIdent) fail("field name");
        if (field_pos < 0) field_pos = peek().pos;
        if (!path.empty()) path += '.';
        path += take().text;
      }
      const auto& fields = word == "unit" ? std::vector<FieldSpec>(std::begin(kUnitFields), std::end(kUnitFields))
                                          : std::vector<FieldSpec>(std::begin(kSelfFields), std::end(kSelfFields));
      for (const auto& f : fields) {
        if (path == f.name) {
          n->kind = ExprNode::Kind::kField;
          n->type = f.type;
          n->entity = word;
          n->text = path;
          return n;
        }
      }
      throw ScoreExprError(field_pos, "unknown field '" + word + "." + path + "'");
    }
    const Builtin* b = find_builtin(word);
    if (b == nullptr) throw ScoreExprError(n->pos, "unknown identifier '" + word + "'");
    expect_op("(");
    std::vector<NodePtr> args;
    if (!is_op(")")) {
      args.push_back(expr());
      while (is_op(",")) {
        take();
        args.push_back(expr());
      }
    }
    expect_op(")");
    if (args.size() != b->args.size()) {
      throw ScoreExprError(n->pos, word + " expects " + std::to_string(b->args.size()) + " argument(s), got " +
                                       std::to_string(args.size()));
    }
    for (std::size_t k = 0; k < args.size(); ++k) {
      require(args[k], b->args[k], word + " argument " + std::to_string(k + 1));
    }
    n->kind = ExprNode::Kind::kCall;
    n->type = b->result;
    n->text = word;
    n->kids = std::move(args);
    return n;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

void collect_params(const ExprNode& n, std::set<std::string>& out) {
  if (n.kind == ExprNode::Kind::kParam) out.insert(n.text);
  for (const auto& k : n.kids) collect_params(*k, out);
}

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::kNumber:
      out += number_text(n.number);
      return;
    case ExprNode::Kind::kBool:
      out += n.number != 0.0 ? "true" : "false";
      return;
    case ExprNode::Kind::kString:
      out += '"' + n.text + '"';
      return;
    case ExprNode::Kind::kParam:
      out += '$' + n.text;
      return;
    case ExprNode::Kind::kEntity:
      out += n.text;
      return;
    case ExprNode::Kind::kField:
      out += n.entity + "." + n.text;
      return;
    case ExprNode::Kind::kCall:
      out += n.text + "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += ", ";
        print(*n.kids[i], out);
      }
      out += ")";
      return;
    case ExprNode::Kind::kUnary:
      out += n.text == "not" ? "(not " : "(-";
      print(*n.kids[0], out);
      out += ")";
      return;
    case ExprNode::Kind::kBinary:
      out += "(";
      print(*n.kids[0], out);
      out += " " + n.text + " ";
      print(*n.kids[1], out);
      out += ")";
      return;
    case ExprNode::Kind::kIf:
      out += "(if ";
      print(*n.kids[0], out);
      out += " then ";
      print(*n.kids[1], out);
      out += " else ";
      print(*n.kids[2], out);
      out += ")";
      return;
  }
}

struct Value {
  double num = 0.0;
  bool flag = false;
  std::string_view str;
  /// nullptr with is_entity set means "self".
  const EntityView* entity = nullptr;
  bool is_entity = false;
};

class Evaluator {
 public:
  Evaluator(const EntityView& unit, const TacticContext& ctx, EvalDiagnostics* diag)
      : unit_(unit), ctx_(ctx), diag_(diag) {}

  Value eval(const ExprNode& n) const {
    Value v;
    switch (n.kind) {
      case ExprNode::Kind::kNumber:
        v.num = n.number;
        return v;
      case ExprNode::Kind::kBool:
        v.flag = n.number != 0.0;
        return v;
      case ExprNode::Kind::kString:
        v.str = n.text;
        return v;
      case ExprNode::Kind::kParam: {
        if (ctx_.params != nullptr) {
          auto it = ctx_.params->find(n.text);
          if (it != ctx_.params->end()) v.num = it->second;
        }
        return v;
      }
      case ExprNode::Kind::kEntity:
        v.is_entity = true;
        v.entity = n.text == "unit" ? &unit_ : nullptr;
        return v;
      case ExprNode::Kind::kField:
        return n.entity == "unit" ? unit_field(n.text) : self_field(n.text);
      case ExprNode::Kind::kCall:
        return call(n);
      case ExprNode::Kind::kUnary: {
        const Value a = eval(*n.kids[0]);
        if (n.text == "not") v.flag = !a.flag;
        else v.num = -a.num;
        return v;
      }
      case ExprNode::Kind::kIf:
        return eval(*n.kids[0]).flag ? eval(*n.kids[1]) : eval(*n.kids[2]);
      case ExprNode::Kind::kBinary:
        return binary(n);
    }
    return v;
  }

 private:
  const ObsData& obs() const { return *ctx_.obs; }

  Value unit_field(const std::string& f) const {
    Value v;
    if (f == "health") v.num = unit_.health;
    else if (f == "shield") v.num = unit_.shield;
    else if (f == "distance") v.num = unit_.distance;
    else if (f == "id") v.num = unit_.id;
    else if (f == "last_action") v.num = unit_.last_action;
    else if (f == "can_attack") v.flag = unit_.can_attack;
    else if (f == "is_ally") v.flag = unit_.is_ally;
    else if (f == "type") v.str = unit_.unit_type;
    else if (f == "position.x") v.num = unit_.position.x;
    else if (f == "position.y") v.num = unit_.position.y;
    return v;
  }

  Value self_field(const std::string& f) const {
    Value v;
    const ObsData& o = obs();
    if (f == "health") v.num = o.own_health;
    else if (f == "shield") v.num = o.own_shield;
    else if (f == "id") v.num = o.agent_id;
    else if (f == "last_action") v.num = o.last_action;
    else if (f == "sight_range") v.num = o.own_sight_range;
    else if (f == "shoot_range") v.num = o.own_shoot_range;
    else if (f == "type") v.str = o.own_unit_type;
    else if (f == "position.x") v.num = o.own_position.x;
    else if (f == "position.y") v.num = o.own_position.y;
    return v;
  }

  std::string_view type_of(const Value& e) const {
    return e.entity != nullptr ? std::string_view(e.entity->unit_type) : std::string_view(obs().own_unit_type);
  }

  Value call(const ExprNode& n) const {
    Value v;
    const std::string& f = n.text;
    if (f == "max" || f == "min") {
      const double a = eval(*n.kids[0]).num;
      const double b = eval(*n.kids[1]).num;
      v.num = f == "max" ? std::max(a, b) : std::min(a, b);
    } else if (f == "abs") {
      v.num = std::fabs(eval(*n.kids[0]).num);
    } else if (f == "priority") {
      v.num = ctx_.priorities ? priority_of(*ctx_.priorities, type_of(eval(*n.kids[0]))) : 5.0;
    } else if (f == "matchup") {
      const Value own = eval(*n.kids[0]);
      const Value target = eval(*n.kids[1]);
      v.num = ctx_.counters ? matchup_of(*ctx_.counters, type_of(own), type_of(target)) : 1.0;
    } else if (f == "is_melee") {
      v.flag = is_melee_type(type_of(eval(*n.kids[0])));
    } else if (f == "allies_attacking") {
      const Value e = eval(*n.kids[0]);
      const int id = e.entity != nullptr ? e.entity->id : obs().agent_id;
      int count = 0;
      for (const auto& a : obs().allies) {
        if (a.last_action >= action::kFirstTarget && a.last_action - action::kFirstTarget == id) ++count;
      }
      v.num = count;
    } else if (f == "cluster_size") {
      const Value e = eval(*n.kids[0]);
      const double r = eval(*n.kids[1]).num;
      if (e.entity != nullptr) {
        const auto& group = e.entity->is_ally ? obs().allies : obs().enemies;
        int count = 0;
        for (const auto& other : group) {
          if ((other.position - e.entity->position).norm() <= r) ++count;
        }
        v.num = count;
      }
    } else if (f == "ranged_ally_factor") {
      const Value e = eval(*n.kids[0]);
      v.num = 1.0;
      if (e.entity != nullptr && is_melee_type(obs().own_unit_type)) {
        Vec2 sum;
        int count = 0;
        for (const auto& a : obs().allies) {
          if (!is_melee_type(a.unit_type)) {
            sum = sum + a.position;
            ++count;
          }
        }
        if (count > 0) {
          const double d = (sum / count - e.entity->position).norm();
          v.num = std::max((1.0 - d) + 1.0, 0.5);
        }
      }
    }
    return v;
  }

  Value binary(const ExprNode& n) const {
    Value v;
    const std::string& op = n.text;
    if (op == "and") {
      v.flag = eval(*n.kids[0]).flag && eval(*n.kids[1]).flag;
      return v;
    }
    if (op == "or") {
      v.flag = eval(*n.kids[0]).flag || eval(*n.kids[1]).flag;
      return v;
    }
    const Value a = eval(*n.kids[0]);
    const Value b = eval(*n.kids[1]);
    const ValueType t = n.kids[0]->type;
    if (op == "==" || op == "!=") {
      bool eq = false;
      if (t == ValueType::kNumber) eq = a.num == b.num;
      else if (t == ValueType::kBool) eq = a.flag == b.flag;
      else eq = a.str == b.str;
      v.flag = op == "==" ? eq : !eq;
    } else if (op == "<") {
      v.flag = a.num < b.num;
    } else if (op == "<=") {
      v.flag = a.num <= b.num;
    } else if (op == ">") {
      v.flag = a.num > b.num;
    } else if (op == ">=") {
      v.flag = a.num >= b.num;
    } else if (op == "+") {
      v.num = a.num + b.num;
    } else if (op == "-") {
      v.num = a.num - b.num;
    } else if (op == "*") {
      v.num = a.num * b.num;
    } else if (op == "/") {
      if (b.num == 0.0) {
        if (diag_ != nullptr) ++diag_->division_by_zero;
        v.num = 0.0;
      } else {
        v.num = a.num / b.num;
      }
    } else if (op == "^") {
      v.num = std::pow(a.num, b.num);
    }
    return v;
  }

  const EntityView& unit_;
  const TacticContext& ctx_;
  EvalDiagnostics* diag_;
};

}  // namespace

std::set<std::string> ScoreExpr::params() const {
  std::set<std::string> out;
  if (root_) collect_params(*root_, out);
  return out;
}

std::string ScoreExpr::canonical() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

ScoreExpr parse_score_expr(std::string_view text) {
  ScoreExpr e;
  e.source_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

double eval_score(const ScoreExpr& expr, const EntityView& unit, const TacticContext& ctx, EvalDiagnostics* diag) {
  if (expr.empty() || ctx.obs == nullptr) return 0.0;
  return Evaluator(unit, ctx, diag).eval(expr.root()).num;
}

}  // namespace skirmish

#include "bjlab/reader.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace bjlab {

std::string to_string(const PredKey& k) {
  return k.name + "/" + std::to_string(k.arity);
}

PredKey pred_key_of(const std::string& text) {
  auto slash = text.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 >= text.size())
    throw std::invalid_argument("bad predicate indicator: " + text);
  int arity = 0;
  for (size_t i = slash + 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("bad predicate indicator: " + text);
    arity = arity * 10 + (text[i] - '0');
  }
  return {text.substr(0, slash), arity};
}

PredKey pred_key(const TermPtr& goal) {
  if (goal->tag == Tag::Const) return {goal->name, 0};
  if (goal->tag == Tag::Compound) return {goal->name, static_cast<int>(goal->args.size())};
  return {"", -1};
}

void Program::add_clause(const Clause& c) {
  PredKey k = pred_key(c.head);
  auto it = procedures.find(k);
  if (it == procedures.end()) {
    order.push_back(k);
    procedures[k].push_back(c);
  } else {
    it->second.push_back(c);
  }
}

const std::vector<Clause>* Program::find(const PredKey& k) const {
  auto it = procedures.find(k);
  return it == procedures.end() ? nullptr : &it->second;
}

ParseError::ParseError(std::string msg, int line_, int col_)
    : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
      line(line_),
      col(col_) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Eof,
  Atom,  // also all operators
  Var,
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Bar,
  Comma,
  Dot,  // clause terminator
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
  // no layout between this token and the previous one; '\+ (a,b)' is a
  // prefix application while '\+(a,b)' is a compound
  bool glued = false;
};

bool symbolic_char(char c) {
  return std::string("+-*/\\^<>=~:.?@#&").find(c) != std::string::npos;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : src_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    size_t before = pos_;
    skip_layout();
    tok_.glued = pos_ == before;
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::Eof;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (c == '(') return punct(Tok::LParen);
    if (c == ')') return punct(Tok::RParen);
    if (c == '[') return punct(Tok::LBracket);
    if (c == ']') return punct(Tok::RBracket);
    if (c == '|') return punct(Tok::Bar);
    if (c == ',') return punct(Tok::Comma);
    if (c == ';') return punct_text(Tok::Atom, ";");
    if (c == '!') return punct_text(Tok::Atom, "!");
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_int();
    if (c == '_' || std::isupper(static_cast<unsigned char>(c))) return lex_name(Tok::Var);
    if (std::isalpha(static_cast<unsigned char>(c))) return lex_name(Tok::Atom);
    if (c == '.' && end_dot(pos_)) {
      ++pos_;
      ++col_;
      tok_.kind = Tok::Dot;
      tok_.text = ".";
      return;
    }
    if (symbolic_char(c)) return lex_symbol();
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  bool end_dot(size_t at) const {
    if (src_[at] != '.') return false;
    if (at + 1 >= src_.size()) return true;
    char n = src_[at + 1];
    return std::isspace(static_cast<unsigned char>(n)) || n == '%';
  }

  void skip_layout() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
  }

  void punct(Tok k) {
    tok_.kind = k;
    tok_.text = src_[pos_];
    ++pos_;
    ++col_;
  }

  void punct_text(Tok k, const std::string& t) {
    tok_.kind = k;
    tok_.text = t;
    pos_ += t.size();
    col_ += static_cast<int>(t.size());
  }

  void lex_int() {
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.kind = Tok::Int;
    tok_.text = src_.substr(start, pos_ - start);
    tok_.value = std::stoll(tok_.text);
    col_ += static_cast<int>(pos_ - start);
  }

  void lex_name(Tok kind) {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    tok_.kind = kind;
    tok_.text = src_.substr(start, pos_ - start);
    col_ += static_cast<int>(pos_ - start);
  }

  void lex_symbol() {
    size_t start = pos_;
    while (pos_ < src_.size() && symbolic_char(src_[pos_])) {
      // A trailing clause-end dot is not part of the symbol.
      if (src_[pos_] == '.' && end_dot(pos_)) break;
      ++pos_;
    }
    tok_.kind = Tok::Atom;
    tok_.text = src_.substr(start, pos_ - start);
    col_ += static_cast<int>(pos_ - start);
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Operator table (fixed; no user-defined operators)

enum class OpType { Xfx, Xfy, Yfx };

struct OpInfo {
  int prio;
  OpType type;
};

const std::unordered_map<std::string, OpInfo>& infix_ops() {
  static const std::unordered_map<std::string, OpInfo> ops = {
      {":-", {1200, OpType::Xfx}}, {";", {1100, OpType::Xfy}},  {"->", {1050, OpType::Xfy}},
      {",", {1000, OpType::Xfy}},  {"=", {700, OpType::Xfx}},   {"is", {700, OpType::Xfx}},
      {"<", {700, OpType::Xfx}},   {">", {700, OpType::Xfx}},   {">=", {700, OpType::Xfx}},
      {"=<", {700, OpType::Xfx}},  {"+", {500, OpType::Yfx}},   {"-", {500, OpType::Yfx}},
      {"*", {400, OpType::Yfx}},   {"/", {400, OpType::Yfx}},
  };
  return ops;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(Lexer& lx, FreshCounter& fresh) : lx_(lx), fresh_(fresh) {}

  // Named variables of the current sentence in first-occurrence order.
  std::vector<TermPtr> named_vars;

  TermPtr parse(int maxp) {
    auto [t, prio] = parse_expr(maxp);
    (void)prio;
    return t;
  }

  void expect(Tok k, const char* what) {
    if (lx_.peek().kind != k)
      throw ParseError(std::string("expected ") + what, lx_.peek().line, lx_.peek().col);
    lx_.take();
  }

  bool at(Tok k) const { return lx_.peek().kind == k; }

 private:
  std::pair<TermPtr, int> parse_expr(int maxp) {
    auto [term, prio] = parse_primary(maxp);
    for (;;) {
      const Token& t = lx_.peek();
      std::string opname;
      if (t.kind == Tok::Comma)
        opname = ",";
      else if (t.kind == Tok::Atom && infix_ops().count(t.text))
        opname = t.text;
      else
        break;
      const OpInfo& op = infix_ops().at(opname);
      if (op.prio > maxp) break;
      int left_max = (op.type == OpType::Yfx) ? op.prio : op.prio - 1;
      int right_max = (op.type == OpType::Xfy) ? op.prio : op.prio - 1;
      if (prio > left_max) break;
      lx_.take();
      TermPtr rhs = parse(right_max);
      term = mk_compound(opname, {term, rhs});
      prio = op.prio;
    }
    return {term, prio};
  }

  std::pair<TermPtr, int> parse_primary(int maxp) {
    Token t = lx_.take();
    switch (t.kind) {
      case Tok::Int: return {mk_int(t.value), 0};
      case Tok::Var: return {variable(t.text), 0};
      case Tok::LParen: {
        TermPtr inner = parse(1200);
        expect(Tok::RParen, "')'");
        return {inner, 0};
      }
      case Tok::LBracket: return {parse_list(), 0};
      case Tok::Atom: {
        if (at(Tok::LParen) && lx_.peek().glued) {
          lx_.take();
          std::vector<TermPtr> args;
          args.push_back(parse(999));
          while (at(Tok::Comma)) {
            lx_.take();
            args.push_back(parse(999));
          }
          expect(Tok::RParen, "')'");
          return {mk_compound(t.text, std::move(args)), 0};
        }
        if (t.text == "-" && at(Tok::Int)) {
          Token i = lx_.take();
          return {mk_int(-i.value), 0};
        }
        if (t.text == "\\+" && maxp >= 900 && starts_term()) {
          TermPtr arg = parse(900);
          return {mk_compound("\\+", {arg}), 900};
        }
        if (t.text == ":-" && maxp >= 1200 && starts_term()) {
          TermPtr arg = parse(1199);
          return {mk_compound(":-", {arg}), 1200};
        }
        return {mk_const(t.text), 0};
      }
      default:
        throw ParseError("expected a term, found '" + t.text + "'", t.line, t.col);
    }
  }

  bool starts_term() const {
    switch (lx_.peek().kind) {
      case Tok::Int:
      case Tok::Var:
      case Tok::Atom:
      case Tok::LParen:
      case Tok::LBracket: return true;
      default: return false;
    }
  }

  TermPtr parse_list() {
    if (at(Tok::RBracket)) {
      lx_.take();
      return nil_term();
    }
    std::vector<TermPtr> items;
    items.push_back(parse(999));
    while (at(Tok::Comma)) {
      lx_.take();
      items.push_back(parse(999));
    }
    TermPtr tail = nullptr;
    if (at(Tok::Bar)) {
      lx_.take();
      tail = parse(999);
    }
    expect(Tok::RBracket, "']'");
    return mk_list(items, tail);
  }

  TermPtr variable(const std::string& name) {
    if (name == "_") return mk_var("_", fresh_.take());
    auto it = varmap_.find(name);
    if (it != varmap_.end()) return it->second;
    TermPtr v = mk_var(name, fresh_.take());
    varmap_.emplace(name, v);
    named_vars.push_back(v);
    return v;
  }

  Lexer& lx_;
  FreshCounter& fresh_;
  std::unordered_map<std::string, TermPtr> varmap_;
};

bool reserved_builtin(const PredKey& k) {
  static const std::set<PredKey> names = {
      {"true", 0},  {"fail", 0},    {"false", 0},   {"=", 2},     {"var", 1},
      {"nonvar", 1}, {"ground", 1},  {"is", 2},      {"<", 2},     {">", 2},
      {">=", 2},    {"=<", 2},      {"\\+", 1},     {";", 2},     {"->", 2},
      {",", 2},     {"assertz", 1}, {"retract", 1}, {"throw", 1}, {"catch", 3},
      {"when", 2},  {"btid", 1},    {"btid", 2},    {"backjump", 1},
  };
  return names.count(k) != 0;
}

void apply_directive(Program& p, const TermPtr& body, int line) {
  // Only dynamic/1 is supported; arguments may be a ','/2 tree of indicators.
  if (is_compound(body, ",", 2)) {
    apply_directive(p, body->args[0], line);
    apply_directive(p, body->args[1], line);
    return;
  }
  if (is_compound(body, "dynamic", 1)) {
    const TermPtr& pi = body->args[0];
    if (is_compound(pi, "/", 2) && pi->args[0]->tag == Tag::Const &&
        pi->args[1]->tag == Tag::Int) {
      p.dynamics.insert({pi->args[0]->name, static_cast<int>(pi->args[1]->value)});
      return;
    }
    throw ParseError("dynamic/1 expects name/arity", line, 1);
  }
  throw ParseError("unsupported directive", line, 1);
}

}  // namespace

Program parse_program(const std::string& text, FreshCounter& fresh) {
  Lexer lx(text);
  Program prog;
  while (lx.peek().kind != Tok::Eof) {
    Parser sentence(lx, fresh);
    int line = lx.peek().line;
    TermPtr t = sentence.parse(1200);
    sentence.expect(Tok::Dot, "'.' at end of clause");
    Clause c;
    if (is_compound(t, ":-", 2)) {
      c.head = t->args[0];
      c.body = t->args[1];
    } else if (is_compound(t, ":-", 1)) {
      apply_directive(prog, t->args[0], line);
      continue;
    } else {
      c.head = t;
      c.body = true_term();
    }
    if (c.head->tag == Tag::Var || c.head->tag == Tag::Int)
      throw ParseError("clause head must be an atom or a compound term", line, 1);
    if (reserved_builtin(pred_key(c.head)))
      throw ParseError("clause head redefines builtin " + to_string(pred_key(c.head)), line, 1);
    prog.add_clause(c);
  }
  return prog;
}

TermPtr parse_query(const std::string& text, FreshCounter& fresh,
                    std::vector<TermPtr>* named_vars) {
  Lexer lx(text);
  Parser p(lx, fresh);
  TermPtr goal = p.parse(1200);
  if (p.at(Tok::Dot)) lx.take();
  if (lx.peek().kind != Tok::Eof)
    throw ParseError("trailing input after query", lx.peek().line, lx.peek().col);
  if (named_vars) *named_vars = p.named_vars;
  return goal;
}

TermPtr parse_term(const std::string& text, FreshCounter& fresh) {
  return parse_query(text, fresh, nullptr);
}

// ---------------------------------------------------------------------------
// Formatter

namespace {

bool alpha_op(const std::string& name) {
  return std::isalpha(static_cast<unsigned char>(name[0]));
}

struct Writer {
  const std::unordered_map<long long, std::string>* var_names = nullptr;

  std::string var_text(const Term& v) const {
    if (var_names) {
      auto it = var_names->find(v.serial);
      if (it != var_names->end()) return it->second;
    }
    if (v.name.empty() || v.name == "_") return "_G" + std::to_string(v.serial);
    return v.name;
  }

  std::string write(const TermPtr& t, int maxp) const {
    switch (t->tag) {
      case Tag::Var: return var_text(*t);
      case Tag::Const: return t->name;
      case Tag::Int: return std::to_string(t->value);
      case Tag::Compound: break;
    }
    if (is_cons(t)) return write_list(t);
    if (t->args.size() == 2) {
      auto it = infix_ops().find(t->name);
      if (it != infix_ops().end()) {
        const OpInfo& op = it->second;
        int left_max = (op.type == OpType::Yfx) ? op.prio : op.prio - 1;
        int right_max = (op.type == OpType::Xfy) ? op.prio : op.prio - 1;
        std::string left = write(t->args[0], left_max);
        std::string right = write(t->args[1], right_max);
        std::string sep;
        if (t->name == ",")
          sep = ", ";
        else if (alpha_op(t->name) || t->name == ":-")
          sep = " " + t->name + " ";
        else
          sep = t->name;
        // "a- -1" needs the blank to survive re-reading.
        if (sep.back() != ' ' && !right.empty() && right[0] == '-') sep += " ";
        std::string body = left + sep + right;
        if (op.prio > maxp) return "(" + body + ")";
        return body;
      }
    }
    if (t->name == "\\+" && t->args.size() == 1) return "\\+(" + write(t->args[0], 999) + ")";
    std::string out = t->name + "(";
    for (size_t i = 0; i < t->args.size(); ++i) {
      if (i) out += ",";
      out += write(t->args[i], 999);
    }
    return out + ")";
  }

  std::string write_list(TermPtr t) const {
    std::string out = "[";
    bool first = true;
    while (is_cons(t)) {
      if (!first) out += ",";
      out += write(t->args[0], 999);
      first = false;
      t = t->args[1];
    }
    if (!is_nil(t)) out += "|" + write(t, 999);
    return out + "]";
  }
};

}  // namespace

std::string format(const TermPtr& t) {
  Writer w;
  return w.write(t, 1200);
}

std::string format_canonical(const TermPtr& t) {
  std::vector<TermPtr> vars;
  collect_vars(t, vars);
  std::unordered_map<long long, std::string> names;
  for (size_t i = 0; i < vars.size(); ++i) {
    std::string n = "_";
    n += static_cast<char>('A' + i % 26);
    if (i >= 26) n += std::to_string(i / 26);
    names.emplace(vars[i]->serial, n);
  }
  Writer w;
  w.var_names = &names;
  return w.write(t, 1200);
}

std::string format_clause(const Clause& c) {
  if (is_const(c.body, "true")) return format(c.head) + ".";
  Writer w;
  return w.write(c.head, 1199) + " :- " + w.write(c.body, 1199) + ".";
}

std::string format_program(const Program& p) {
  std::ostringstream out;
  for (const auto& d : p.dynamics) out << ":- dynamic(" << d.name << "/" << d.arity << ").\n";
  for (const auto& key : p.order) {
    for (const auto& c : p.procedures.at(key)) out << format_clause(c) << "\n";
  }
  return out.str();
}

}  // namespace bjlab

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bjlab/term.hpp"

namespace bjlab {

struct PredKey {
  std::string name;
  int arity = 0;
  auto operator<=>(const PredKey&) const = default;
};

std::string to_string(const PredKey& k);
// Parses "name/arity"; throws std::invalid_argument on bad input.
PredKey pred_key_of(const std::string& text);
// Predicate indicator of a callable term (Const -> name/0).
PredKey pred_key(const TermPtr& goal);

// Ordered procedures; clause order within a procedure is source order
// (LD-resolution tries clauses top-down).
struct Program {
  std::vector<PredKey> order;
  std::map<PredKey, std::vector<Clause>> procedures;
  std::set<PredKey> dynamics;

  void add_clause(const Clause& c);
  const std::vector<Clause>* find(const PredKey& k) const;
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int col);
  int line;
  int col;
};

// Parses the supported Prolog subset. Fixed operator table, '%' comments,
// one clause per '.'-terminated sentence. Fresh variable serials are drawn
// from `fresh` so programs and queries can share one engine run.
Program parse_program(const std::string& text, FreshCounter& fresh);

// Single goal (possibly a ','/';'/'->' tree). If `named_vars` is given it
// receives the named query variables in first-occurrence order.
TermPtr parse_query(const std::string& text, FreshCounter& fresh,
                    std::vector<TermPtr>* named_vars = nullptr);

TermPtr parse_term(const std::string& text, FreshCounter& fresh);

// Round-trips through parse for the supported subset. Lists print in
// [a,b|T] notation; machine-made variables print as _G<serial>.
std::string format(const TermPtr& t);
// Variables renamed _A, _B, ... by first occurrence; used for comparing
// terms across runs whose serials differ.
std::string format_canonical(const TermPtr& t);

std::string format_clause(const Clause& c);
std::string format_program(const Program& p);

}  // namespace bjlab

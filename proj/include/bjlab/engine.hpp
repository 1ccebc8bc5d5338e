#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bjlab/reader.hpp"
#include "bjlab/term.hpp"
#include "bjlab/trace.hpp"

namespace bjlab {

enum class Mode { Iso, NativeBj };

struct Limits {
  long long max_steps = 10'000'000;
  long long max_solutions = -1;  // unlimited
};

struct Answer {
  // Query variables in source order, fully resolved.
  std::vector<std::pair<std::string, TermPtr>> bindings;
  // Still-blocked when/2 atoms at the solution (pseudo-answer residue).
  std::vector<TermPtr> residue;
};

enum class ErrorKind {
  UncaughtBall,
  UnknownPredicate,
  StepLimit,
  TypeError,
  InstantiationError,
  UnsupportedBuiltin,
  BackjumpTargetMissing,
  NameClash,
};

struct EngineError {
  ErrorKind kind;
  std::string message;
  TermPtr ball;  // UncaughtBall only
};

struct SolveResult {
  std::vector<Answer> answers;
  std::vector<TraceEvent> trace;
  std::optional<EngineError> error;
  long long steps = 0;
};

// LD-resolution with chronological backtracking, ISO-style catch/throw,
// when/2 coroutining, a dynamic clause database, and (in NativeBj mode)
// the btid/backjump target machinery. One engine owns all mutable state
// of a run; it is single-threaded.
class Engine {
 public:
  Engine(Program program, Mode mode, FreshCounter fresh, Limits limits = {});

  SolveResult solve(const TermPtr& query,
                    const std::vector<TermPtr>& named_vars = {});

  Mode mode() const { return mode_; }

 private:
  Program program_;
  Mode mode_;
  FreshCounter fresh_;
  Limits limits_;
};

// Parse program and query with a shared counter, run, return the result.
SolveResult solve_text(const std::string& program_text, const std::string& query_text,
                       Mode mode, Limits limits = {});

std::string format_answer(const Answer& a);

}  // namespace bjlab

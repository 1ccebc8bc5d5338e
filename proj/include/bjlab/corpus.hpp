#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bjlab/engine.hpp"
#include "bjlab/reader.hpp"
#include "bjlab/term.hpp"
#include "bjlab/trace.hpp"

namespace bjlab {

// Propositional CNF over variables 1..nvars. A clause may be empty
// (unsatisfiable).
struct CnfLit {
  bool pol;
  int var;  // 1-based
};
struct Cnf {
  int nvars = 0;
  std::vector<std::vector<CnfLit>> clauses;
};

// DIMACS-like fixture format: "p cnf n m" then m lines of signed ints
// terminated by 0.
Cnf cnf_from_dimacs(const std::string& text);
std::string cnf_to_dimacs(const Cnf& c);

// List-of-lists of true-V / false-V literal pairs; one fresh variable per
// CNF variable, returned in `vars` (named V1..Vn).
TermPtr encode(const Cnf& c, FreshCounter& fresh, std::vector<TermPtr>* vars = nullptr);

// Brute-force enumeration of all satisfying total assignments,
// assignment[i] = value of variable i+1. Requires nvars <= 20. Shares no
// code with the engine.
std::vector<std::vector<bool>> oracle(const Cnf& c);

// Fixed-profile random instance: 1..4 variables, 1..5 clauses, width 1..3.
Cnf random_cnf(std::mt19937& rng);

// Every CNF over exactly 2 variables with 0..2 clauses drawn from the
// nonempty width<=2 clauses plus the empty clause.
std::vector<Cnf> exhaustive_2var_cnfs();

// Truth value of one answer binding: plain programs bind variables to
// true/false constants, leveled programs to (level, value) pairs.
// nullopt = left unbound by the answer.
using PartialAssignment = std::vector<std::optional<bool>>;
PartialAssignment extract_assignment(const Answer& a, int nvars, bool leveled);

bool assignment_satisfies(const PartialAssignment& pa, const Cnf& c);

// Set of total assignments covered by one partial assignment.
std::vector<std::vector<bool>> expand_assignment(const PartialAssignment& pa);

struct CoverVerdict {
  bool sound = false;     // every ground instance of every answer satisfies c
  bool complete = false;  // every oracle assignment extends some answer
};
CoverVerdict answers_cover_oracle(const std::vector<PartialAssignment>& answers, const Cnf& c);

// Keeps Call/Exit/Redo/Fail events of the given predicates plus Answer
// events; drops everything else (catch/throw/btid bookkeeping included).
std::vector<TraceEvent> project_trace(const std::vector<TraceEvent>& trace,
                                      const std::set<PredKey>& keep);

struct TraceDiff {
  bool equal = true;
  size_t index = 0;  // first mismatch (or the shorter length)
  std::string left;  // rendering of the mismatching events, "" past the end
  std::string right;
};
TraceDiff diff_traces(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b);
std::string render_event(const TraceEvent& e);

// One corpus program: embedded source, how to pose a formula to it, and
// how to read its answers back.
struct CorpusProgram {
  std::string name;
  std::string source;
  std::string query_pred;  // sat_cnf / sat_b
  int query_arity = 1;     // 1: f(Sat); 2: f(Sat,0); 3: f(Sat,0,-1)
  bool leveled = false;    // values are (level,value) pairs
  Mode mode = Mode::Iso;   // pb2_native needs NativeBj
};

// The embedded program suite: p1, p2, p3, pb, pb2, pb3, pb3a, plus the
// instrumented variants pb2_native (btid/backjump) and pb2_dbsim
// (database simulation, produced by the dbsim transform).
const std::vector<CorpusProgram>& build_corpus_programs();
const CorpusProgram& corpus_program(const std::string& name);

struct CnfRun {
  SolveResult result;
  std::vector<PartialAssignment> assignments;
};
CnfRun run_on_cnf(const CorpusProgram& prog, const Cnf& c, Limits limits = {});

// Seed for randomized corpus sweeps; BJLAB_SEED overrides the fixed
// default.
unsigned corpus_seed();

}  // namespace bjlab

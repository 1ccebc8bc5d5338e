#include "bjlab/engine.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>

#include "bjlab/coroutine.hpp"

namespace bjlab {

namespace {

struct EngineAbort {
  EngineError err;
};

[[noreturn]] void abort_run(ErrorKind kind, std::string msg, TermPtr ball = nullptr) {
  throw EngineAbort{EngineError{kind, std::move(msg), std::move(ball)}};
}

// Entries of the active part. Besides plain goals there are three control
// markers: Exit (a call's subtree succeeded), Then (commit point of an
// if-then-else condition) and NotSucc (the goal under \+ succeeded).
struct Entry {
  enum class K { Goal, Exit, Then, NotSucc };
  K k = K::Goal;
  TermPtr term;           // Goal: the goal; Exit/NotSucc: call goal; Then: then-branch
  long long owner = -1;   // serial of the clause choice point whose body this is
  long long node = -1;    // Exit / NotSucc
  long long target = -1;  // Exit: catch frame serial (or -1); Then / NotSucc: barrier serial
};

struct GoalNode {
  Entry e;
  std::shared_ptr<const GoalNode> next;
};
using GoalList = std::shared_ptr<const GoalNode>;

GoalList cons(Entry e, GoalList next) {
  auto n = std::make_shared<GoalNode>();
  n->e = std::move(e);
  n->next = std::move(next);
  return n;
}

struct BlockedAtom {
  TermPtr atom;  // the when/2 term
  long long owner = -1;
  long long node = -1;
};

// Choice points and catch frames share one stack; popping restores
// bindings, the blocked part, and the target registry to the marks
// recorded at creation.
struct CP {
  enum class K { Clause, Catch, Disj, Barrier, Not };
  K k = K::Clause;
  long long serial = -1;
  size_t trail_mark = 0;
  size_t registry_mark = 0;
  std::vector<BlockedAtom> blocked;
  GoalList cont;
  long long owner = -1;  // owner for goals resumed out of this CP

  // Clause
  TermPtr goal;
  long long node = -1;
  std::vector<Clause> alts;
  std::vector<int> alt_idx;  // 1-based clause indices, parallel to alts
  int last_clause_index = 0;
  long long creator_owner = -1;
  bool tried_any = false;

  // Catch. A frame whose goal has exited is no candidate for catching;
  // exited_at records the stack height at exit so that backtracking back
  // into the goal's region makes the frame live again.
  TermPtr catcher;
  TermPtr handler;
  std::optional<size_t> exited_at;

  // Disj / Barrier
  TermPtr alt_goal;
};

struct RegEntry {
  TermPtr key;
  long long cp_serial;
};

class Machine {
 public:
  Machine(const Program& program, Mode mode, FreshCounter& fresh, Limits limits)
      : program_(program), mode_(mode), fresh_(fresh), limits_(limits) {
    for (const auto& pk : program_.dynamics) {
      auto it = program_.procedures.find(pk);
      db_[pk] = it == program_.procedures.end() ? std::vector<Clause>{} : it->second;
    }
  }

  SolveResult result;

  void run(const TermPtr& query, const std::vector<TermPtr>& named_vars) {
    query_ = query;
    named_vars_ = named_vars;
    active_ = cons(Entry{Entry::K::Goal, query, -1, -1, -1}, nullptr);
    try {
      loop();
    } catch (const EngineAbort& a) {
      result.error = a.err;
    } catch (const ConditionError& ce) {
      result.error = EngineError{ErrorKind::TypeError, ce.what(), nullptr};
    }
    result.steps = steps_;
  }

 private:
  // ------------------------------------------------------------------ state
  const Program& program_;
  Mode mode_;
  FreshCounter& fresh_;
  Limits limits_;

  Subst subst_;
  std::vector<CP> cps_;
  GoalList active_;
  std::vector<BlockedAtom> blocked_;
  std::vector<RegEntry> registry_;
  std::map<PredKey, std::vector<Clause>> db_;

  TermPtr query_;
  std::vector<TermPtr> named_vars_;

  long long steps_ = 0;
  long long node_counter_ = 0;
  long long cp_counter_ = 0;
  long long btid_counter_ = 0;

  // ------------------------------------------------------------------ trace
  void emit(Port port, long long node, const TermPtr& goal, TermPtr payload = nullptr,
            std::vector<AncestorStep> ancestry = {}) {
    result.trace.push_back(
        {port, node, goal ? subst_.resolve(goal) : nullptr, std::move(payload), std::move(ancestry)});
  }

  std::vector<AncestorStep> ancestry_of(long long owner) {
    std::vector<AncestorStep> out;
    long long cur = owner;
    while (cur >= 0) {
      const CP* cp = find_serial(cur);
      if (!cp) break;
      out.push_back({cp->node, subst_.resolve(cp->goal), cp->last_clause_index});
      cur = cp->creator_owner;
    }
    return out;
  }

  // ------------------------------------------------------------------ stack
  CP* find_serial(long long serial) {
    for (auto& cp : cps_)
      if (cp.serial == serial) return &cp;
    return nullptr;
  }

  size_t index_of_serial(long long serial) {
    for (size_t i = cps_.size(); i-- > 0;)
      if (cps_[i].serial == serial) return i;
    abort_run(ErrorKind::BackjumpTargetMissing, "choice point no longer on the stack");
  }

  void restore_marks(const CP& cp) {
    subst_.undo_to(cp.trail_mark);
    blocked_ = cp.blocked;
    registry_.resize(std::min(registry_.size(), cp.registry_mark));
  }

  // Execution resumed at stack height ns: any exited frame whose goal
  // region encloses that height is live again (redo re-enters the goal).
  void reactivate_frames() {
    size_t ns = cps_.size();
    for (auto& cp : cps_)
      if (cp.k == CP::K::Catch && cp.exited_at && *cp.exited_at >= ns) cp.exited_at.reset();
  }

  void mark_frame_exited(long long serial) {
    CP* cp = find_serial(serial);
    if (cp && cp->k == CP::K::Catch) cp->exited_at = cps_.size();
  }

  // --------------------------------------------------------------- coroutine
  // Def.: after a binding step, when-atoms whose conditions became true move
  // from the blocked part to the front of the active part, original order
  // preserved.
  std::vector<BlockedAtom> rewake() {
    std::vector<BlockedAtom> woken, rest;
    for (auto& b : blocked_) {
      if (eval_condition(b.atom->args[0], subst_)) {
        emit(Port::Unblock, b.node, b.atom);
        woken.push_back(b);
      } else {
        rest.push_back(b);
      }
    }
    blocked_ = std::move(rest);
    return woken;
  }

  void prepend_woken(const std::vector<BlockedAtom>& woken) {
    for (auto it = woken.rbegin(); it != woken.rend(); ++it)
      active_ = cons(Entry{Entry::K::Goal, it->atom, it->owner, -1, -1}, active_);
  }

  // ------------------------------------------------------------------- loop
  void loop() {
    for (;;) {
      if (steps_ > limits_.max_steps)
        abort_run(ErrorKind::StepLimit, "step limit exceeded (" +
                                            std::to_string(limits_.max_steps) + ")");
      if (!active_) {
        record_answer();
        if (limits_.max_solutions >= 0 &&
            static_cast<long long>(result.answers.size()) >= limits_.max_solutions)
          return;
        if (!backtrack()) return;
        continue;
      }
      Entry e = active_->e;
      active_ = active_->next;
      bool ok = true;
      switch (e.k) {
        case Entry::K::Exit:
          emit(Port::Exit, e.node, e.term);
          if (e.target >= 0) mark_frame_exited(e.target);
          break;
        case Entry::K::Then:
          do_commit(e);
          break;
        case Entry::K::NotSucc: {
          emit(Port::Fail, e.node, e.term);
          cps_.resize(index_of_serial(e.target));
          ok = false;
          break;
        }
        case Entry::K::Goal:
          ok = dispatch(e);
          break;
      }
      if (!ok && !backtrack()) return;
    }
  }

  void record_answer() {
    emit(Port::Answer, -1, query_);
    Answer a;
    for (const auto& v : named_vars_) a.bindings.emplace_back(v->name, subst_.resolve(v));
    for (const auto& b : blocked_) a.residue.push_back(subst_.resolve(b.atom));
    result.answers.push_back(std::move(a));
  }

  // ---------------------------------------------------------------- control
  void do_commit(const Entry& e) {
    size_t idx = index_of_serial(e.target);
    long long barrier_serial = e.target;
    registry_.erase(std::remove_if(registry_.begin(), registry_.end(),
                                   [&](const RegEntry& r) { return r.cp_serial > barrier_serial; }),
                    registry_.end());
    cps_.resize(idx);
    active_ = cons(Entry{Entry::K::Goal, e.term, e.owner, -1, -1}, active_);
  }

  bool backtrack() {
    while (!cps_.empty()) {
      CP& cp = cps_.back();
      switch (cp.k) {
        case CP::K::Clause:
          if (resume_clause(cp.tried_any)) return true;
          break;  // popped inside, keep backtracking
        case CP::K::Catch:
          cps_.pop_back();
          break;
        case CP::K::Disj:
        case CP::K::Barrier: {
          restore_marks(cp);
          GoalList a = cons(Entry{Entry::K::Goal, cp.alt_goal, cp.owner, -1, -1}, cp.cont);
          cps_.pop_back();
          reactivate_frames();
          active_ = a;
          return true;
        }
        case CP::K::Not: {
          restore_marks(cp);
          long long node = cp.node;
          TermPtr goal = cp.goal;
          GoalList a = cp.cont;
          cps_.pop_back();
          reactivate_frames();
          emit(Port::Exit, node, goal);  // \+ succeeds because its goal failed
          active_ = a;
          return true;
        }
      }
    }
    return false;
  }

  // The top of the stack must be a clause CP. Tries the remaining
  // alternatives; pops the CP (with a Fail port) when they run out. Redo
  // is only shown when some alternative actually resolves, so leftover
  // non-matching clauses do not change the trace.
  bool resume_clause(bool redo) {
    CP& cp = cps_.back();
    restore_marks(cp);
    reactivate_frames();
    while (!cp.alts.empty()) {
      Clause c = cp.alts.front();
      int ci = cp.alt_idx.front();
      cp.alts.erase(cp.alts.begin());
      cp.alt_idx.erase(cp.alt_idx.begin());
      ++steps_;
      Clause rc = rename_apart(c, fresh_);
      size_t m = subst_.mark();
      if (subst_.unify(rc.head, cp.goal)) {
        if (redo) {
          // show the goal as at re-entry, not instantiated by the new head
          subst_.undo_to(m);
          emit(Port::Redo, cp.node, cp.goal);
          subst_.unify(rc.head, cp.goal);
        }
        cp.last_clause_index = ci;
        cp.tried_any = true;
        auto woken = rewake();
        GoalList a = cons(Entry{Entry::K::Exit, cp.goal, -1, cp.node, -1}, cp.cont);
        if (!is_const(rc.body, "true"))
          a = cons(Entry{Entry::K::Goal, rc.body, cp.serial, -1, -1}, a);
        active_ = a;
        prepend_woken(woken);
        return true;
      }
      subst_.undo_to(m);
    }
    emit(Port::Fail, cp.node, cp.goal);
    cps_.pop_back();
    return false;
  }

  // -------------------------------------------------------------- exceptions
  void do_throw(const TermPtr& ball) {
    for (size_t i = cps_.size(); i-- > 0;) {
      CP& f = cps_[i];
      if (f.k != CP::K::Catch || f.exited_at) continue;
      subst_.undo_to(f.trail_mark);
      registry_.resize(std::min(registry_.size(), f.registry_mark));
      TermPtr copy = rename_term(ball, fresh_);
      size_t m = subst_.mark();
      if (subst_.unify(copy, f.catcher)) {
        long long node = f.node;
        TermPtr goal = f.goal;
        TermPtr handler = f.handler;
        long long owner = f.owner;
        GoalList cont = f.cont;
        cps_.resize(i);
        emit(Port::Catch, node, goal, ball);
        auto woken = rewake();
        active_ = cons(Entry{Entry::K::Goal, handler, owner, -1, -1}, cont);
        prepend_woken(woken);
        return;
      }
      subst_.undo_to(m);
    }
    abort_run(ErrorKind::UncaughtBall, "uncaught ball: " + format(ball), ball);
  }

  // --------------------------------------------------------------- builtins
  long long eval_arith(TermPtr t) {
    t = subst_.walk(std::move(t));
    switch (t->tag) {
      case Tag::Int: return t->value;
      case Tag::Var:
        abort_run(ErrorKind::InstantiationError, "arithmetic on an unbound variable");
      default: break;
    }
    if (is_compound(t, "+", 2)) return eval_arith(t->args[0]) + eval_arith(t->args[1]);
    if (is_compound(t, "-", 2)) return eval_arith(t->args[0]) - eval_arith(t->args[1]);
    if (is_compound(t, "*", 2)) return eval_arith(t->args[0]) * eval_arith(t->args[1]);
    if (is_compound(t, "-", 1)) return -eval_arith(t->args[0]);
    abort_run(ErrorKind::TypeError, "not an arithmetic expression: " + format(subst_.resolve(t)));
  }

  bool builtin_unify_result(long long node, const TermPtr& goal, bool unified, size_t mark) {
    if (unified) {
      auto woken = rewake();
      emit(Port::Exit, node, goal);
      prepend_woken(woken);
      return true;
    }
    subst_.undo_to(mark);
    emit(Port::Fail, node, goal);
    return false;
  }

  void register_target(const TermPtr& key, long long owner) {
    if (owner < 0)
      abort_run(ErrorKind::TypeError, "btid used outside a clause body");
    registry_.push_back({subst_.resolve(key), owner});
  }

  bool split_clause_term(const TermPtr& t, Clause& out) {
    TermPtr w = subst_.walk(t);
    if (is_compound(w, ":-", 2)) {
      out.head = w->args[0];
      out.body = w->args[1];
    } else {
      out.head = w;
      out.body = true_term();
    }
    out.head = subst_.walk(out.head);
    return out.head->tag == Tag::Const || out.head->tag == Tag::Compound;
  }

  // -------------------------------------------------------- goal dispatch
  bool dispatch(const Entry& e) {
    TermPtr g = subst_.walk(e.term);
    ++steps_;
    if (g->tag == Tag::Var)
      abort_run(ErrorKind::InstantiationError, "call of an unbound variable");
    if (g->tag == Tag::Int)
      abort_run(ErrorKind::TypeError, "call of an integer");

    const std::string& name = g->name;
    size_t arity = g->tag == Tag::Compound ? g->args.size() : 0;

    if (name == "," && arity == 2) {
      active_ = cons(Entry{Entry::K::Goal, g->args[0], e.owner, -1, -1},
                     cons(Entry{Entry::K::Goal, g->args[1], e.owner, -1, -1}, active_));
      return true;
    }
    if (arity == 0 && name == "true") return true;
    if (arity == 0 && (name == "fail" || name == "false")) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      emit(Port::Fail, n, g);
      return false;
    }
    if (name == ";" && arity == 2) {
      TermPtr left = subst_.walk(g->args[0]);
      CP cp;
      cp.serial = cp_counter_++;
      cp.trail_mark = subst_.mark();
      cp.registry_mark = registry_.size();
      cp.blocked = blocked_;
      cp.cont = active_;
      cp.owner = e.owner;
      cp.alt_goal = g->args[1];
      if (is_compound(left, "->", 2)) {
        cp.k = CP::K::Barrier;
        long long s = cp.serial;
        cps_.push_back(std::move(cp));
        active_ = cons(Entry{Entry::K::Goal, left->args[0], e.owner, -1, -1},
                       cons(Entry{Entry::K::Then, left->args[1], e.owner, -1, s}, active_));
      } else {
        cp.k = CP::K::Disj;
        cps_.push_back(std::move(cp));
        active_ = cons(Entry{Entry::K::Goal, g->args[0], e.owner, -1, -1}, active_);
      }
      return true;
    }
    if (name == "->" && arity == 2) {
      active_ = cons(Entry{Entry::K::Goal, mk_compound(";", {g, mk_const("fail")}), e.owner, -1, -1},
                     active_);
      return true;
    }
    if (name == "\\+" && arity == 1) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      CP cp;
      cp.k = CP::K::Not;
      cp.serial = cp_counter_++;
      cp.trail_mark = subst_.mark();
      cp.registry_mark = registry_.size();
      cp.blocked = blocked_;
      cp.cont = active_;
      cp.owner = e.owner;
      cp.goal = g;
      cp.node = n;
      long long s = cp.serial;
      cps_.push_back(std::move(cp));
      active_ = cons(Entry{Entry::K::Goal, g->args[0], e.owner, -1, -1},
                     cons(Entry{Entry::K::NotSucc, g, e.owner, n, s}, active_));
      return true;
    }
    if (name == "=" && arity == 2) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      size_t m = subst_.mark();
      return builtin_unify_result(n, g, subst_.unify(g->args[0], g->args[1]), m);
    }
    if ((name == "var" || name == "nonvar") && arity == 1) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      bool isvar = subst_.walk(g->args[0])->tag == Tag::Var;
      bool ok = (name == "var") == isvar;
      emit(ok ? Port::Exit : Port::Fail, n, g);
      return ok;
    }
    if (name == "ground" && arity == 1) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      bool ok = term_is_ground(g->args[0], subst_);
      emit(ok ? Port::Exit : Port::Fail, n, g);
      return ok;
    }
    if (name == "is" && arity == 2) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      long long v = eval_arith(g->args[1]);
      size_t m = subst_.mark();
      return builtin_unify_result(n, g, subst_.unify(g->args[0], mk_int(v)), m);
    }
    if (arity == 2 && (name == "<" || name == ">" || name == ">=" || name == "=<")) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      long long l = eval_arith(g->args[0]);
      long long r = eval_arith(g->args[1]);
      bool ok = name == "<" ? l < r : name == ">" ? l > r : name == ">=" ? l >= r : l <= r;
      emit(ok ? Port::Exit : Port::Fail, n, g);
      return ok;
    }
    if (name == "throw" && arity == 1) {
      TermPtr ball = subst_.resolve(g->args[0]);
      long long n = node_counter_++;
      emit(Port::Throw, n, g, ball, ancestry_of(e.owner));
      do_throw(ball);
      return true;
    }
    if (name == "catch" && arity == 3) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      CP cp;
      cp.k = CP::K::Catch;
      cp.serial = cp_counter_++;
      cp.trail_mark = subst_.mark();
      cp.registry_mark = registry_.size();
      cp.blocked = blocked_;
      cp.owner = e.owner;
      cp.goal = g;
      cp.node = n;
      cp.catcher = g->args[1];
      cp.handler = g->args[2];
      cp.cont = cons(Entry{Entry::K::Exit, g, -1, n, cp.serial}, active_);
      GoalList cont = cp.cont;
      cps_.push_back(std::move(cp));
      active_ = cons(Entry{Entry::K::Goal, g->args[0], e.owner, -1, -1}, cont);
      return true;
    }
    if (name == "when" && arity == 2) {
      if (eval_condition(g->args[0], subst_)) {
        active_ = cons(Entry{Entry::K::Goal, g->args[1], e.owner, -1, -1}, active_);
      } else {
        long long n = node_counter_++;
        blocked_.push_back({g, e.owner, n});
        emit(Port::Block, n, g);
      }
      return true;
    }
    if (name == "btid" && arity == 2) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      TermPtr slot = subst_.walk(g->args[1]);
      if (slot->tag != Tag::Var)
        abort_run(ErrorKind::TypeError, "btid/2: identifier argument already bound");
      TermPtr key = mk_int(btid_counter_++);
      subst_.bind(*slot, key);
      register_target(key, e.owner);
      auto woken = rewake();
      emit(Port::Exit, n, g);
      prepend_woken(woken);
      return true;
    }
    if (name == "btid" && arity == 1) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      if (!term_is_ground(g->args[0], subst_))
        abort_run(ErrorKind::InstantiationError, "btid/1: key must be ground");
      register_target(g->args[0], e.owner);
      emit(Port::Exit, n, g);
      return true;
    }
    if (name == "backjump" && arity == 1) {
      if (mode_ != Mode::NativeBj)
        abort_run(ErrorKind::UnsupportedBuiltin, "backjump/1 requires native-bj mode");
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      TermPtr key = subst_.resolve(g->args[0]);
      long long target = -1;
      for (size_t i = registry_.size(); i-- > 0;) {
        if (structurally_equal(registry_[i].key, key)) {
          target = registry_[i].cp_serial;
          break;
        }
      }
      if (target < 0)
        abort_run(ErrorKind::BackjumpTargetMissing,
                  "backjump/1: no registered target matches " + format(key), key);
      emit(Port::Backjump, n, g, key);
      size_t idx = index_of_serial(target);
      cps_.resize(idx + 1);
      return false;  // backtracking resumes at the target choice point
    }
    if (name == "assertz" && arity == 1) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      Clause c;
      if (!split_clause_term(subst_.resolve(g->args[0]), c))
        abort_run(ErrorKind::TypeError, "assertz/1: not a clause");
      PredKey pk = pred_key(c.head);
      if (program_.find(pk) && !program_.dynamics.count(pk))
        abort_run(ErrorKind::TypeError, "assertz/1 into static predicate " + to_string(pk));
      db_[pk].push_back(c);
      emit(Port::Exit, n, g);
      return true;
    }
    if (name == "retract" && arity == 1) {
      long long n = node_counter_++;
      emit(Port::Call, n, g);
      Clause pattern;
      if (!split_clause_term(g->args[0], pattern))
        abort_run(ErrorKind::TypeError, "retract/1: not a clause");
      PredKey pk = pred_key(subst_.walk(pattern.head));
      auto it = db_.find(pk);
      if (it != db_.end()) {
        auto& clauses = it->second;
        for (size_t i = 0; i < clauses.size(); ++i) {
          Clause rc = rename_apart(clauses[i], fresh_);
          size_t m = subst_.mark();
          if (subst_.unify(rc.head, pattern.head) && subst_.unify(rc.body, pattern.body)) {
            clauses.erase(clauses.begin() + i);
            auto woken = rewake();
            emit(Port::Exit, n, g);
            prepend_woken(woken);
            return true;
          }
          subst_.undo_to(m);
        }
      }
      emit(Port::Fail, n, g);
      return false;
    }

    return user_call(g, e.owner);
  }

  bool user_call(const TermPtr& g, long long owner) {
    PredKey pk = pred_key(g);
    long long n = node_counter_++;
    emit(Port::Call, n, g);
    const std::vector<Clause>* clauses = nullptr;
    if (program_.dynamics.count(pk)) {
      clauses = &db_[pk];
    } else {
      clauses = program_.find(pk);
      if (!clauses) {
        auto dyn = db_.find(pk);
        if (dyn != db_.end())
          clauses = &dyn->second;
        else
          abort_run(ErrorKind::UnknownPredicate, "unknown predicate " + to_string(pk));
      }
    }
    CP cp;
    cp.k = CP::K::Clause;
    cp.serial = cp_counter_++;
    cp.trail_mark = subst_.mark();
    cp.registry_mark = registry_.size();
    cp.blocked = blocked_;
    cp.cont = active_;
    cp.goal = g;
    cp.node = n;
    cp.alts = *clauses;  // snapshot; assert/retract during the call do not affect it
    cp.alt_idx.resize(cp.alts.size());
    for (size_t i = 0; i < cp.alts.size(); ++i) cp.alt_idx[i] = static_cast<int>(i) + 1;
    cp.creator_owner = owner;
    cps_.push_back(std::move(cp));
    return resume_clause(false);
  }
};

}  // namespace

Engine::Engine(Program program, Mode mode, FreshCounter fresh, Limits limits)
    : program_(std::move(program)), mode_(mode), fresh_(fresh), limits_(limits) {}

SolveResult Engine::solve(const TermPtr& query, const std::vector<TermPtr>& named_vars) {
  FreshCounter fresh = fresh_;
  Machine m(program_, mode_, fresh, limits_);
  m.run(query, named_vars);
  return std::move(m.result);
}

SolveResult solve_text(const std::string& program_text, const std::string& query_text, Mode mode,
                       Limits limits) {
  FreshCounter fresh;
  Program p = parse_program(program_text, fresh);
  std::vector<TermPtr> named;
  TermPtr q = parse_query(query_text, fresh, &named);
  Engine e(std::move(p), mode, fresh, limits);
  return e.solve(q, named);
}

std::string format_answer(const Answer& a) {
  std::string out;
  for (size_t i = 0; i < a.bindings.size(); ++i) {
    if (i) out += ", ";
    out += a.bindings[i].first + "=" + format(a.bindings[i].second);
  }
  if (out.empty()) out = "true";
  if (!a.residue.empty()) {
    out += " residue:[";
    for (size_t i = 0; i < a.residue.size(); ++i) {
      if (i) out += ",";
      out += format(a.residue[i]);
    }
    out += "]";
  }
  return out;
}

}  // namespace bjlab

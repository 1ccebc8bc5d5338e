#include <doctest.h>

#include "bjlab/engine.hpp"
#include "test_util.hpp"

using namespace bjlab;
using namespace bjlab::testutil;

TEST_CASE("facts, conjunction, clause order") {
  auto r = solve_text("p(a). p(b). q(b).", "p(X), q(X)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "b");
  CHECK(!r.error);
}

TEST_CASE("unification builtin and var/nonvar/ground") {
  auto r = solve_text("", "X = f(Y), nonvar(X), var(Y), \\+ ground(X), Y = a, ground(X)",
                      Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "f(a)");
}

TEST_CASE("arithmetic") {
  auto r = solve_text("", "X is 2 + 3 * 4, X >= 14, X =< 14, X > 13, 13 < X", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "14");

  r = solve_text("", "X is -(3) - 2", Mode::Iso);
  CHECK(binding(r.answers.at(0), "X") == "-5");

  r = solve_text("", "X is Y + 1", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::InstantiationError);

  r = solve_text("", "X is foo + 1", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::TypeError);
}

TEST_CASE("disjunction and if-then-else") {
  auto r = solve_text("", "(X = 1 ; X = 2)", Mode::Iso);
  REQUIRE(r.answers.size() == 2);
  CHECK(binding(r.answers[0], "X") == "1");
  CHECK(binding(r.answers[1], "X") == "2");

  // the condition is committed: no second solution from it
  r = solve_text("c(1). c(2).", "(c(X) -> Y = then ; Y = else)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "1");
  CHECK(binding(r.answers[0], "Y") == "then");

  r = solve_text("c(1).", "(c(2) -> Y = then ; Y = else)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "Y") == "else");

  // bare -> with no else fails when the condition fails
  r = solve_text("", "(fail -> X = 1)", Mode::Iso);
  CHECK(r.answers.empty());
  CHECK(!r.error);
}

TEST_CASE("negation as failure") {
  CHECK(solve_text("p(a).", "\\+ p(b)", Mode::Iso).answers.size() == 1);
  CHECK(solve_text("p(a).", "\\+ p(a)", Mode::Iso).answers.empty());
  // no bindings leak out of \+
  auto r = solve_text("p(a).", "\\+ (p(X), fail), var(X)", Mode::Iso);
  CHECK(r.answers.size() == 1);
}

TEST_CASE("unknown predicate is an error, empty dynamic predicate fails") {
  auto r = solve_text("", "nothing(1)", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::UnknownPredicate);

  r = solve_text(":- dynamic(d/1).", "d(1)", Mode::Iso);
  CHECK(!r.error);
  CHECK(r.answers.empty());
}

TEST_CASE("assertz and retract") {
  auto r = solve_text(":- dynamic(d/1).", "assertz(d(1)), assertz(d(2)), d(X)", Mode::Iso);
  REQUIRE(r.answers.size() == 2);
  CHECK(binding(r.answers[0], "X") == "1");

  r = solve_text(":- dynamic(d/1).",
                 "assertz(d(1)), assertz(d(2)), retract(d(X)), \\+ d(1), d(2)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "1");

  // asserting over a static predicate is an error
  r = solve_text("s(1).", "assertz(s(2))", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::TypeError);

  // assertions survive backtracking
  r = solve_text(":- dynamic(d/1).", "(assertz(d(1)), fail ; d(X))", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "1");
}

TEST_CASE("step limit yields a partial result with an error") {
  Limits lim;
  lim.max_steps = 50;
  auto r = solve_text("loop :- loop.", "loop", Mode::Iso, lim);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::StepLimit);
  CHECK(!r.trace.empty());
}

TEST_CASE("max_solutions stops the search") {
  Limits lim;
  lim.max_solutions = 2;
  auto r = solve_text("n(1). n(2). n(3).", "n(X)", Mode::Iso, lim);
  CHECK(r.answers.size() == 2);
}

// ---------------------------------------------------------------------------
// catch/throw conformance
// ---------------------------------------------------------------------------

TEST_CASE("catch/throw: ball caught by matching catcher") {
  auto r = solve_text("", "catch(throw(b), b, X = handled)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "handled");
}

TEST_CASE("catch/throw: fresh ball copy unifies with the catcher") {
  // the thrown ball is a copy, so a non-ground ball still matches
  auto r = solve_text("", "catch(throw(f(_)), f(a), true)", Mode::Iso);
  CHECK(r.answers.size() == 1);
  CHECK(!r.error);
}

TEST_CASE("catch/throw: ball is resolved at throw time, bindings then undone") {
  auto r = solve_text("", "catch((X = 1, throw(g(X))), g(Z), (var(X), Y = Z))", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "Y") == "1");
  CHECK(binding(r.answers[0], "X") != "1");
}

TEST_CASE("catch/throw: no throw means catch is transparent") {
  auto r = solve_text("", "catch(X = 1, b, fail)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "1");
}

TEST_CASE("catch/throw: goal failure is not caught") {
  auto r = solve_text("", "catch(fail, _, true)", Mode::Iso);
  CHECK(r.answers.empty());
  CHECK(!r.error);
}

TEST_CASE("catch/throw: mismatching catcher lets the ball propagate") {
  auto r = solve_text("", "catch(catch(throw(b), c, fail), b, X = outer)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "outer");

  r = solve_text("", "catch(throw(b), c, true)", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::UncaughtBall);
  CHECK(format(r.error->ball) == "b");
}

TEST_CASE("catch/throw: innermost matching frame wins") {
  auto r = solve_text("", "catch(catch(throw(b), b, X = inner), b, X = outer)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "inner");
}

TEST_CASE("catch/throw: rethrow from the handler reaches the outer frame") {
  auto r = solve_text("", "catch(catch(throw(a), a, throw(b)), b, X = outer)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "outer");
}

TEST_CASE("catch/throw: a frame whose goal exited no longer catches") {
  // condition (b): the ball is not thrown during the execution of the goal
  auto r = solve_text("", "catch(true, b, true), throw(b)", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::UncaughtBall);
}

TEST_CASE("catch/throw: redo back into the goal re-arms the frame") {
  // after n(9) fails we backtrack into m/1 under the catch; the throw from
  // m(2) happens during a (re-entered) execution of the goal and is caught
  auto r = solve_text("s :- catch(m(X), b, fail), n(X).\nm(1).\nm(2) :- throw(b).\nn(9).",
                      "s", Mode::Iso);
  CHECK(r.answers.empty());
  CHECK(!r.error);
}

TEST_CASE("catch/throw: unbound catcher catches anything") {
  auto r = solve_text("", "catch(throw(f(1, 2)), Ball, true)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "Ball") == "f(1,2)");
}

TEST_CASE("catch/throw: throw from a deep call is caught across frames") {
  auto r = solve_text("p :- q.\nq :- r.\nr :- throw(deep).",
                      "catch(p, deep, X = ok)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "ok");
}

TEST_CASE("catch/throw: handler choice points remain open") {
  auto r = solve_text("h(1). h(2).", "catch(throw(b), b, h(X))", Mode::Iso);
  REQUIRE(r.answers.size() == 2);
}

TEST_CASE("catch/throw: catcher unification is undone before trying outer frames") {
  // the inner catcher g(1) does not match g(2); the attempt must not leave
  // bindings behind for the outer frame's handler
  auto r = solve_text("", "catch(catch(throw(g(2)), g(1), fail), g(N), Y = N)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "Y") == "2");
}

TEST_CASE("catch/throw: trace has Throw and Catch events with the ball") {
  auto r = solve_text("", "catch(throw(b), b, true)", Mode::Iso);
  bool saw_throw = false, saw_catch = false;
  for (const auto& e : r.trace) {
    if (e.port == Port::Throw && format(e.payload) == "b") saw_throw = true;
    if (e.port == Port::Catch && format(e.payload) == "b") saw_catch = true;
  }
  CHECK(saw_throw);
  CHECK(saw_catch);
}

TEST_CASE("throw ancestry records the call chain with clause indices") {
  auto r = solve_text("p :- q.\nq :- r, s.\nr.\ns :- throw(b).", "catch(p, b, true)", Mode::Iso);
  REQUIRE(!r.error);
  const TraceEvent* th = nullptr;
  for (const auto& e : r.trace)
    if (e.port == Port::Throw) th = &e;
  REQUIRE(th);
  REQUIRE(th->ancestry.size() == 3);
  CHECK(format(th->ancestry[0].goal) == "s");
  CHECK(format(th->ancestry[1].goal) == "q");
  CHECK(format(th->ancestry[2].goal) == "p");
  CHECK(th->ancestry[1].clause_index == 1);
}

// ---------------------------------------------------------------------------
// native backjumping
// ---------------------------------------------------------------------------

TEST_CASE("btid/2 binds consecutive fresh integers") {
  auto r = solve_text("g(A, B) :- btid(x, A), btid(y, B).", "g(A, B)", Mode::Iso);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "A") == "0");
  CHECK(binding(r.answers[0], "B") == "1");
}

TEST_CASE("backjump requires native mode") {
  auto r = solve_text("p :- btid(k), backjump(k).", "p", Mode::Iso);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::UnsupportedBuiltin);
}

TEST_CASE("backjump to a missing target is an error") {
  auto r = solve_text("p :- backjump(nowhere).", "p", Mode::NativeBj);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::BackjumpTargetMissing);
}

TEST_CASE("backjump resumes the registering call's choice point") {
  auto r = solve_text(
      "p(X) :- c(X, T), b(X, T).\n"
      "c(1, T) :- btid(k1, T).\n"
      "c(2, T) :- btid(k2, T).\n"
      "c(3, T) :- btid(k3, T).\n"
      "b(1, T) :- backjump(T).\n"
      "b(3, _).",
      "p(X)", Mode::NativeBj);
  REQUIRE(r.answers.size() == 1);
  CHECK(binding(r.answers[0], "X") == "3");
  // the Backjump event is immediately followed by the Redo of the target
  for (size_t i = 0; i + 1 < r.trace.size(); ++i) {
    if (r.trace[i].port == Port::Backjump) {
      CHECK(r.trace[i + 1].port == Port::Redo);
      CHECK(pred_key(r.trace[i + 1].goal) == PredKey{"c", 2});
    }
  }
}

TEST_CASE("backjump registrations are undone chronologically") {
  // after backtracking past the registering choice point the key is gone
  auto r = solve_text(
      "p :- q, fail.\n"
      "p :- backjump(k).\n"
      "q :- btid(k).",
      "p", Mode::NativeBj);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::BackjumpTargetMissing);
}

TEST_CASE("backjump key lookup is exact structural match") {
  auto r = solve_text(
      "p(X) :- c(T), b(X, T).\n"
      "c(T) :- btid(f(1), T).\n"
      "b(1, _) :- backjump(f(_)).\n"
      "b(2, _).",
      "p(X)", Mode::NativeBj);
  // f(_) does not match f(1) exactly
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::BackjumpTargetMissing);
}

TEST_CASE("btid/1 requires a ground key") {
  auto r = solve_text("p :- btid(f(X)).", "p", Mode::NativeBj);
  REQUIRE(r.error);
  CHECK(r.error->kind == ErrorKind::InstantiationError);
}

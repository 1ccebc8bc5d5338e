#include <doctest.h>

#include <random>

#include "bjlab/term.hpp"
#include "bjlab/reader.hpp"

using namespace bjlab;

namespace {

// Random terms over a small signature, depth-bounded. Shared variables are
// drawn from a fixed pool so unification problems are nontrivial.
TermPtr random_term(std::mt19937& rng, const std::vector<TermPtr>& pool, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 2 : 3);
  switch (kind(rng)) {
    case 0: return pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
    case 1: return mk_const(std::uniform_int_distribution<int>(0, 1)(rng) ? "a" : "b");
    case 2: return mk_int(std::uniform_int_distribution<int>(-3, 3)(rng));
    default: {
      std::uniform_int_distribution<int> ar(1, 3);
      int n = ar(rng);
      std::vector<TermPtr> args;
      for (int i = 0; i < n; ++i) args.push_back(random_term(rng, pool, depth - 1));
      return mk_compound(n == 2 ? "g" : "f", std::move(args));
    }
  }
}

// There is no occurs-check, so unify(X, f(X)) succeeds with a cyclic
// binding; skip those cases instead of resolving them.
bool finite(const Subst& s, const TermPtr& t, int depth = 0) {
  if (depth > 64) return false;
  TermPtr w = s.walk(t);
  for (const auto& a : w->args)
    if (!finite(s, a, depth + 1)) return false;
  return true;
}

}  // namespace

TEST_CASE("construction and structural equality") {
  TermPtr a = mk_compound("f", {mk_const("a"), mk_int(3)});
  TermPtr b = mk_compound("f", {mk_const("a"), mk_int(3)});
  CHECK(structurally_equal(a, b));
  CHECK(!structurally_equal(a, mk_compound("f", {mk_const("a"), mk_int(4)})));
  FreshCounter fc;
  TermPtr v1 = mk_var("X", fc.take());
  TermPtr v2 = mk_var("X", fc.take());
  CHECK(!structurally_equal(v1, v2));  // identity is the serial, not the name
  CHECK(structurally_equal(v1, v1));
}

TEST_CASE("list constructors") {
  TermPtr l = mk_list({mk_int(1), mk_int(2)});
  CHECK(format(l) == "[1,2]");
  CHECK(is_cons(l));
  CHECK(is_nil(nil_term()));
  FreshCounter fc;
  TermPtr t = mk_var("T", fc.take());
  CHECK(format(mk_list({mk_int(1)}, t)) == "[1|T]");
}

TEST_CASE("conj_of folds right and normalizes empty to true") {
  CHECK(format(conj_of({})) == "true");
  TermPtr g = conj_of({mk_const("a"), mk_const("b"), mk_const("c")});
  CHECK(is_compound(g, ",", 2));
  CHECK(format(g) == "a, b, c");
  CHECK(is_compound(g->args[1], ",", 2));
}

TEST_CASE("unify binds and resolve applies the closure") {
  FreshCounter fc;
  TermPtr x = mk_var("X", fc.take()), y = mk_var("Y", fc.take());
  Subst s;
  REQUIRE(s.unify(mk_compound("f", {x, y}), mk_compound("f", {y, mk_const("a")})));
  CHECK(format(s.resolve(x)) == "a");
  CHECK(format(s.resolve(y)) == "a");
}

TEST_CASE("unify failure leaves no lasting bindings after undo") {
  FreshCounter fc;
  TermPtr x = mk_var("X", fc.take());
  Subst s;
  size_t m = s.mark();
  CHECK(!s.unify(mk_compound("f", {x, x}), mk_compound("f", {mk_const("a"), mk_const("b")})));
  s.undo_to(m);
  CHECK(s.size() == 0);
  CHECK(s.walk(x)->tag == Tag::Var);
}

TEST_CASE("no occurs-check: X = f(X) is accepted") {
  FreshCounter fc;
  TermPtr x = mk_var("X", fc.take());
  Subst s;
  CHECK(s.unify(x, mk_compound("f", {x})));
}

TEST_CASE("undo_to restores exactly to the mark") {
  FreshCounter fc;
  TermPtr x = mk_var("X", fc.take()), y = mk_var("Y", fc.take());
  Subst s;
  REQUIRE(s.unify(x, mk_const("a")));
  size_t m = s.mark();
  REQUIRE(s.unify(y, mk_const("b")));
  s.undo_to(m);
  CHECK(format(s.resolve(x)) == "a");
  CHECK(s.walk(y)->tag == Tag::Var);
}

TEST_CASE("rename_apart produces fresh variables, same structure") {
  FreshCounter fc;
  TermPtr x = mk_var("X", fc.take());
  Clause c{mk_compound("p", {x}), mk_compound("q", {x, x})};
  Clause r = rename_apart(c, fc);
  CHECK(format_canonical(r.head) == format_canonical(c.head));
  CHECK(!structurally_equal(r.head->args[0], x));
  // shared variables stay shared
  CHECK(structurally_equal(r.head->args[0], r.body->args[0]));
  CHECK(structurally_equal(r.body->args[0], r.body->args[1]));
}

TEST_CASE("collect_vars is first-occurrence ordered and duplicate-free") {
  FreshCounter fc;
  TermPtr t = parse_term("f(X, g(Y, X), Z)", fc);
  std::vector<TermPtr> vs;
  collect_vars(t, vs);
  REQUIRE(vs.size() == 3);
  CHECK(vs[0]->name == "X");
  CHECK(vs[1]->name == "Y");
  CHECK(vs[2]->name == "Z");
}

TEST_CASE("unifier property: mgu equates both sides (randomized)") {
  std::mt19937 rng(12345);
  int successes = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    FreshCounter fc;
    std::vector<TermPtr> pool;
    for (int i = 0; i < 4; ++i) pool.push_back(mk_var("V" + std::to_string(i), fc.take()));
    TermPtr a = random_term(rng, pool, 3);
    TermPtr b = random_term(rng, pool, 3);
    Subst s;
    if (s.unify(a, b)) {
      if (!finite(s, a) || !finite(s, b)) continue;
      ++successes;
      CHECK(structurally_equal(s.resolve(a), s.resolve(b)));
      // idempotence: resolving twice changes nothing
      CHECK(structurally_equal(s.resolve(a), s.resolve(s.resolve(a))));
    }
  }
  CHECK(successes > 100);  // the generator must exercise the success path
}

TEST_CASE("functional unify does not disturb the base substitution") {
  FreshCounter fc;
  TermPtr x = mk_var("X", fc.take());
  Subst base;
  auto r = unify(x, mk_const("a"), base);
  REQUIRE(r.has_value());
  CHECK(format(r->resolve(x)) == "a");
  CHECK(base.size() == 0);
}

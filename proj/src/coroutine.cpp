#include "bjlab/coroutine.hpp"

#include "bjlab/reader.hpp"

namespace bjlab {

bool term_is_ground(const TermPtr& t, const Subst& s) {
  TermPtr w = s.walk(t);
  if (w->tag == Tag::Var) return false;
  if (w->tag == Tag::Compound) {
    for (const auto& a : w->args)
      if (!term_is_ground(a, s)) return false;
  }
  return true;
}

bool eval_condition(const TermPtr& cond, const Subst& s) {
  TermPtr c = s.walk(cond);
  if (is_compound(c, ",", 2)) return eval_condition(c->args[0], s) && eval_condition(c->args[1], s);
  if (is_compound(c, ";", 2)) return eval_condition(c->args[0], s) || eval_condition(c->args[1], s);
  if (is_compound(c, "nonvar", 1)) return s.walk(c->args[0])->tag != Tag::Var;
  if (is_compound(c, "ground", 1)) return term_is_ground(c->args[0], s);
  throw ConditionError("malformed when/2 condition: " + format(c));
}

bool is_when_atom(const TermPtr& goal) { return is_compound(goal, "when", 2); }

}  // namespace bjlab

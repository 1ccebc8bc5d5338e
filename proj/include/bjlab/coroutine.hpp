#pragma once

#include <stdexcept>

#include "bjlab/term.hpp"

namespace bjlab {

struct ConditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// when/2 wake-up conditions: nonvar/1, ground/1, and ','/';' combinations.
// Throws ConditionError on anything else.
bool eval_condition(const TermPtr& cond, const Subst& s);

bool is_when_atom(const TermPtr& goal);

bool term_is_ground(const TermPtr& t, const Subst& s);

}  // namespace bjlab

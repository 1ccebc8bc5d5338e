#include "bjlab/transform.hpp"

#include <algorithm>

namespace bjlab {

namespace {

// Identifier source term for btid: single head argument as-is, the head
// atom for arity 0, a ','-tuple otherwise.
TermPtr id_tuple(const TermPtr& head) {
  if (head->tag != Tag::Compound) return head;
  if (head->args.size() == 1) return head->args[0];
  std::vector<TermPtr> as = head->args;
  TermPtr t = as.back();
  for (size_t i = as.size() - 1; i-- > 0;) t = mk_conj(as[i], t);
  return t;
}

TermPtr id_from_arg(const TermPtr& head, int arg, const PredKey& pk) {
  if (head->tag != Tag::Compound || arg < 1 || arg > static_cast<int>(head->args.size()))
    throw TransformError("id argument " + std::to_string(arg) + " out of range for " +
                         to_string(pk));
  return head->args[arg - 1];
}

TermPtr catch3(TermPtr goal, TermPtr ball, TermPtr handler) {
  return mk_compound("catch", {std::move(goal), std::move(ball), std::move(handler)});
}

TermPtr fresh_id_var(FreshCounter& fresh) { return mk_var("Id", fresh.take()); }

Clause wrap_clause1(const Clause& c, const BackjumpSpec& spec, FreshCounter& fresh,
                    bool dynamic_guard) {
  const PredKey pk = pred_key(c.head);
  TermPtr body = c.body ? c.body : true_term();
  if (spec.id_policy == BackjumpSpec::IdPolicy::FromArg) {
    // The guard variant needs a btid call to test, so it applies to the
    // fresh-id policy only.
    TermPtr id = id_from_arg(c.head, spec.id_arg, pk);
    return {c.head, catch3(body, id, mk_const("fail"))};
  }
  TermPtr id = fresh_id_var(fresh);
  TermPtr reg = mk_compound("btid", {id_tuple(c.head), id});
  TermPtr wrapped = catch3(body, id, mk_const("fail"));
  if (dynamic_guard)
    return {c.head, mk_compound(";", {mk_compound("->", {reg, wrapped}), body})};
  return {c.head, mk_conj(reg, wrapped)};
}

void check_no_def(const Program& p, const PredKey& pk) {
  if (p.find(pk) || p.dynamics.count(pk))
    throw TransformError("name clash: program already defines " + to_string(pk));
}

// True when s maps variables to distinct variables only (a renaming).
bool is_renaming(const Subst& s, const std::vector<TermPtr>& domain) {
  std::set<long long> seen;
  for (const auto& v : domain) {
    TermPtr img = s.walk(v);
    if (img->tag != Tag::Var) return false;
    if (!seen.insert(img->serial).second) return false;
  }
  return true;
}

}  // namespace

std::vector<TermPtr> flatten_conj(const TermPtr& body) {
  std::vector<TermPtr> out;
  std::vector<TermPtr> stack{body};
  while (!stack.empty()) {
    TermPtr t = stack.back();
    stack.pop_back();
    if (is_compound(t, ",", 2)) {
      stack.push_back(t->args[1]);  // right pushed first so left pops first
      stack.push_back(t->args[0]);
    } else if (!is_const(t, "true")) {
      out.push_back(t);
    }
  }
  return out;
}

Program approach1(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh) {
  Program out;
  out.dynamics = p.dynamics;
  for (const auto& pk : p.order) {
    const auto& clauses = p.procedures.at(pk);
    for (size_t i = 0; i < clauses.size(); ++i) {
      ClauseId cid{pk, static_cast<int>(i) + 1};
      if (!spec.target_procedures.count(pk) || spec.exempt_clauses.count(cid)) {
        out.add_clause(clauses[i]);
      } else {
        out.add_clause(wrap_clause1(clauses[i], spec, fresh, spec.dynamic_exempt.count(cid) > 0));
      }
    }
  }
  return out;
}

Program approach1a(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh) {
  Program out;
  out.dynamics = p.dynamics;
  for (const auto& pk : p.order) {
    const auto& clauses = p.procedures.at(pk);
    if (!spec.target_procedures.count(pk)) {
      for (const auto& c : clauses) out.add_clause(c);
      continue;
    }
    // All heads must be equal up to renaming; bodies are rebased onto the
    // first clause's head variables.
    Clause first = rename_apart(clauses[0], fresh);
    TermPtr head = first.head;
    std::vector<TermPtr> bodies{first.body};
    for (size_t j = 1; j < clauses.size(); ++j) {
      Clause cj = rename_apart(clauses[j], fresh);
      // Variants only: the mgu must act as a renaming on either head's
      // variables (checked per side; a shared representative across sides
      // is expected and fine).
      std::vector<TermPtr> cj_vars, head_vars;
      collect_vars(cj.head, cj_vars);
      collect_vars(head, head_vars);
      Subst s;
      if (!s.unify(cj.head, head) || !is_renaming(s, cj_vars) || !is_renaming(s, head_vars))
        throw TransformError("clause heads of " + to_string(pk) +
                             " are not identical up to renaming");
      bodies.push_back(s.resolve(cj.body));
    }
    TermPtr id;
    TermPtr prefix;  // btid call, FreshId only
    if (spec.id_policy == BackjumpSpec::IdPolicy::FromArg) {
      id = id_from_arg(head, spec.id_arg, pk);
    } else {
      id = fresh_id_var(fresh);
      prefix = mk_compound("btid", {id_tuple(head), id});
    }
    TermPtr body = catch3(bodies.back(), id, mk_const("fail"));
    for (size_t j = bodies.size() - 1; j-- > 0;)
      body = catch3(mk_compound(";", {bodies[j], mk_compound("throw", {id})}), id, body);
    if (prefix) body = mk_conj(prefix, body);
    out.add_clause({head, body});
  }
  return out;
}

Program approach2(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh) {
  Program out;
  out.dynamics = p.dynamics;
  for (const auto& pk : p.order) {
    const auto& clauses = p.procedures.at(pk);
    for (size_t i = 0; i < clauses.size(); ++i) {
      ClauseId cid{pk, static_cast<int>(i) + 1};
      auto it = spec.split_points.find(cid);
      if (it == spec.split_points.end()) {
        out.add_clause(clauses[i]);
        continue;
      }
      const Clause& c = clauses[i];
      std::vector<TermPtr> goals = flatten_conj(c.body);
      int split = it->second;
      if (goals.size() < 2 || split < 1 || split >= static_cast<int>(goals.size()))
        throw TransformError("split point " + std::to_string(split) + " out of range for " +
                             to_string(pk) + " clause " + std::to_string(cid.second));
      TermPtr b1 = conj_of({goals.begin() + split, goals.end()});
      std::vector<TermPtr> front(goals.begin(), goals.begin() + split);
      if (spec.id_policy == BackjumpSpec::IdPolicy::FromArg) {
        front.push_back(catch3(b1, id_from_arg(c.head, spec.id_arg, pk), mk_const("fail")));
      } else {
        TermPtr id = fresh_id_var(fresh);
        front.push_back(mk_compound("btid", {id_tuple(c.head), id}));
        front.push_back(catch3(b1, id, mk_const("fail")));
      }
      out.add_clause({c.head, conj_of(front)});
    }
  }
  return out;
}

Program dbsim(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh) {
  check_no_def(p, {"catch", 1});
  check_no_def(p, {"target", 1});
  Program out;
  out.dynamics = p.dynamics;
  TermPtr target_any =
      mk_compound("target", {mk_var("_", fresh.take())});
  for (const auto& pk : p.order) {
    const auto& clauses = p.procedures.at(pk);
    for (size_t i = 0; i < clauses.size(); ++i) {
      ClauseId cid{pk, static_cast<int>(i) + 1};
      const Clause& c = clauses[i];
      if (!spec.target_procedures.count(pk)) {
        out.add_clause(c);
      } else if (spec.exempt_clauses.count(cid)) {
        TermPtr guard = mk_compound("\\+", {mk_compound("target", {mk_var("_", fresh.take())})});
        out.add_clause({c.head, mk_conj(guard, c.body)});
      } else if (spec.id_policy == BackjumpSpec::IdPolicy::FromArg) {
        TermPtr check = mk_compound("catch", {id_from_arg(c.head, spec.id_arg, pk)});
        out.add_clause({c.head, mk_conj(check, c.body)});
      } else {
        TermPtr id = fresh_id_var(fresh);
        TermPtr reg = mk_compound("btid", {id_tuple(c.head), id});
        TermPtr check = mk_compound("catch", {id});
        out.add_clause({c.head, mk_conj(reg, mk_conj(check, c.body))});
      }
    }
  }
  // catch(Id) :- ( target(_) -> retract(target(Id)) ; true ).
  TermPtr id = fresh_id_var(fresh);
  TermPtr cond = mk_compound("->", {target_any,
                                    mk_compound("retract", {mk_compound("target", {id})})});
  out.add_clause({mk_compound("catch", {id}), mk_compound(";", {cond, true_term()})});
  out.dynamics.insert({"target", 1});
  return out;
}

}  // namespace bjlab

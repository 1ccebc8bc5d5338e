#include "bjlab/term.hpp"

#include <unordered_set>

namespace bjlab {

TermPtr mk_var(std::string name, long long serial) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::Var;
  t->name = std::move(name);
  t->serial = serial;
  return t;
}

TermPtr mk_const(std::string name) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::Const;
  t->name = std::move(name);
  return t;
}

TermPtr mk_int(long long v) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::Int;
  t->value = v;
  return t;
}

TermPtr mk_compound(std::string functor, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::Compound;
  t->name = std::move(functor);
  t->args = std::move(args);
  return t;
}

TermPtr nil_term() {
  static const TermPtr nil = mk_const("[]");
  return nil;
}

TermPtr true_term() {
  static const TermPtr t = mk_const("true");
  return t;
}

TermPtr mk_cons(TermPtr head, TermPtr tail) {
  return mk_compound(".", {std::move(head), std::move(tail)});
}

TermPtr mk_list(const std::vector<TermPtr>& items, TermPtr tail) {
  TermPtr t = tail ? tail : nil_term();
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = mk_cons(*it, t);
  return t;
}

TermPtr mk_pair(TermPtr a, TermPtr b) { return mk_compound("-", {std::move(a), std::move(b)}); }

TermPtr mk_conj(TermPtr a, TermPtr b) { return mk_compound(",", {std::move(a), std::move(b)}); }

TermPtr conj_of(const std::vector<TermPtr>& goals) {
  if (goals.empty()) return true_term();
  TermPtr t = goals.back();
  for (auto it = goals.rbegin() + 1; it != goals.rend(); ++it) t = mk_conj(*it, t);
  return t;
}

bool is_const(const TermPtr& t, const std::string& name) {
  return t->tag == Tag::Const && t->name == name;
}

bool is_compound(const TermPtr& t, const std::string& functor, size_t arity) {
  return t->tag == Tag::Compound && t->name == functor && t->args.size() == arity;
}

bool is_nil(const TermPtr& t) { return is_const(t, "[]"); }

bool is_cons(const TermPtr& t) { return is_compound(t, ".", 2); }

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Var: return a->serial == b->serial;
    case Tag::Const: return a->name == b->name;
    case Tag::Int: return a->value == b->value;
    case Tag::Compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!structurally_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

static void collect_vars_rec(const TermPtr& t, std::vector<TermPtr>& out,
                             std::unordered_set<long long>& seen) {
  if (t->tag == Tag::Var) {
    if (seen.insert(t->serial).second) out.push_back(t);
  } else if (t->tag == Tag::Compound) {
    for (const auto& a : t->args) collect_vars_rec(a, out, seen);
  }
}

void collect_vars(const TermPtr& t, std::vector<TermPtr>& out) {
  std::unordered_set<long long> seen;
  for (const auto& v : out) seen.insert(v->serial);
  collect_vars_rec(t, out, seen);
}

TermPtr Subst::walk(TermPtr t) const {
  while (t->tag == Tag::Var) {
    auto it = bindings_.find(t->serial);
    if (it == bindings_.end()) return t;
    t = it->second;
  }
  return t;
}

TermPtr Subst::resolve(TermPtr t) const {
  t = walk(std::move(t));
  if (t->tag != Tag::Compound) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(resolve(a));
    if (args.back().get() != a.get()) changed = true;
  }
  if (!changed) return t;
  return mk_compound(t->name, std::move(args));
}

void Subst::bind(const Term& v, TermPtr t) {
  bindings_.emplace(v.serial, std::move(t));
  trail_.push_back(v.serial);
}

bool Subst::bound(long long serial) const { return bindings_.count(serial) != 0; }

void Subst::undo_to(size_t mark) {
  while (trail_.size() > mark) {
    bindings_.erase(trail_.back());
    trail_.pop_back();
  }
}

bool Subst::unify(TermPtr a, TermPtr b) {
  a = walk(std::move(a));
  b = walk(std::move(b));
  if (a->tag == Tag::Var && b->tag == Tag::Var && a->serial == b->serial) return true;
  if (a->tag == Tag::Var) {
    bind(*a, b);
    return true;
  }
  if (b->tag == Tag::Var) {
    bind(*b, a);
    return true;
  }
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Const: return a->name == b->name;
    case Tag::Int: return a->value == b->value;
    case Tag::Compound: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!unify(a->args[i], b->args[i])) return false;
      return true;
    }
    default: return false;
  }
}

std::optional<Subst> unify(const TermPtr& a, const TermPtr& b, const Subst& base) {
  Subst s = base;
  if (s.unify(a, b)) return s;
  return std::nullopt;
}

static TermPtr rename_rec(const TermPtr& t, FreshCounter& fresh,
                          std::unordered_map<long long, TermPtr>& map) {
  switch (t->tag) {
    case Tag::Var: {
      auto it = map.find(t->serial);
      if (it != map.end()) return it->second;
      auto v = mk_var("", fresh.take());
      map.emplace(t->serial, v);
      return v;
    }
    case Tag::Compound: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(rename_rec(a, fresh, map));
      return mk_compound(t->name, std::move(args));
    }
    default: return t;
  }
}

Clause rename_apart(const Clause& c, FreshCounter& fresh) {
  std::unordered_map<long long, TermPtr> map;
  Clause out;
  out.head = rename_rec(c.head, fresh, map);
  out.body = rename_rec(c.body, fresh, map);
  return out;
}

TermPtr rename_term(const TermPtr& t, FreshCounter& fresh) {
  std::unordered_map<long long, TermPtr> map;
  return rename_rec(t, fresh, map);
}

}  // namespace bjlab

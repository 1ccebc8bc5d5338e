#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bjlab {

enum class Tag { Var, Const, Int, Compound };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term cell. Lists are '.'/2 chains ending in '[]'; the literal
// pair Pol-V is '-'/2; value pairs (l,v) are ','/2.
struct Term {
  Tag tag;
  std::string name;       // Var: name hint ("" for machine-made), Const: name, Compound: functor
  long long serial = -1;  // Var only; unique within an engine run
  long long value = 0;    // Int only
  std::vector<TermPtr> args;
};

// Fresh-serial source shared by parsing, renaming and the engine.
struct FreshCounter {
  long long next = 0;
  long long take() { return next++; }
};

TermPtr mk_var(std::string name, long long serial);
TermPtr mk_const(std::string name);
TermPtr mk_int(long long v);
TermPtr mk_compound(std::string functor, std::vector<TermPtr> args);

TermPtr nil_term();
TermPtr true_term();
TermPtr mk_cons(TermPtr head, TermPtr tail);
TermPtr mk_list(const std::vector<TermPtr>& items, TermPtr tail = nullptr);
TermPtr mk_pair(TermPtr a, TermPtr b);  // '-'/2
TermPtr mk_conj(TermPtr a, TermPtr b);  // ','/2
// Right-folded conjunction; empty sequence yields 'true'.
TermPtr conj_of(const std::vector<TermPtr>& goals);

bool is_const(const TermPtr& t, const std::string& name);
bool is_compound(const TermPtr& t, const std::string& functor, size_t arity);
bool is_nil(const TermPtr& t);
bool is_cons(const TermPtr& t);

bool structurally_equal(const TermPtr& a, const TermPtr& b);

// Distinct variables of t in first-occurrence order.
void collect_vars(const TermPtr& t, std::vector<TermPtr>& out);

// Binding store with a chronological trail so choice points can undo
// exactly to their mark. Bindings are a map from Var serial to term;
// resolve() is the substitution closure, so results never contain a
// variable from the domain (idempotence).
class Subst {
 public:
  // Shallow dereference: follows Var bindings until a non-variable or an
  // unbound variable is reached.
  TermPtr walk(TermPtr t) const;
  // Deep application.
  TermPtr resolve(TermPtr t) const;

  // Extends the bindings; records every new binding on the trail. On
  // failure the caller undoes to its own mark. No occurs-check.
  bool unify(TermPtr a, TermPtr b);

  void bind(const Term& v, TermPtr t);
  bool bound(long long serial) const;

  size_t mark() const { return trail_.size(); }
  void undo_to(size_t mark);

  size_t size() const { return bindings_.size(); }

 private:
  std::unordered_map<long long, TermPtr> bindings_;
  std::vector<long long> trail_;
};

// Functional wrapper over Subst::unify for tests and one-shot use.
std::optional<Subst> unify(const TermPtr& a, const TermPtr& b, const Subst& base);

struct Clause {
  TermPtr head;
  TermPtr body;  // 'true' for facts
};

// Fresh copy of a clause, all variables renamed apart.
Clause rename_apart(const Clause& c, FreshCounter& fresh);
// Fresh copy of a term (used for ball copies per catch attempt).
TermPtr rename_term(const TermPtr& t, FreshCounter& fresh);

}  // namespace bjlab

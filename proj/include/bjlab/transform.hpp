#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "bjlab/reader.hpp"
#include "bjlab/term.hpp"

namespace bjlab {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Clause identity: predicate indicator + 1-based clause index.
using ClauseId = std::pair<PredKey, int>;

// Which procedures to rewrite and how the catch identifier is obtained.
// FreshId: a btid/2 call binds a fresh integer. FromArg: a designated,
// already-bound head argument serves as the identifier and no btid call
// is emitted.
struct BackjumpSpec {
  std::set<PredKey> target_procedures;
  enum class IdPolicy { FreshId, FromArg } id_policy = IdPolicy::FreshId;
  int id_arg = 1;  // 1-based head argument, FromArg only
  // approach2: clause -> |B0|, the number of body goals left outside the
  // catch. Both parts must be nonempty: 1 <= split < body length.
  std::map<ClauseId, int> split_points;
  // Clauses known never to catch; left unchanged (dbsim: guarded instead).
  std::set<ClauseId> exempt_clauses;
  // Clauses rewritten to (btid(..,Id) -> catch(B,Id,fail) ; B).
  std::set<ClauseId> dynamic_exempt;
};

// Per clause p(t) <- B of a target procedure:
//   FreshId:  p(t) <- btid(t,Id), catch(B,Id,fail)
//   FromArg:  p(t) <- catch(B,arg,fail)
// Facts get body 'true' before wrapping. Exempt clauses stay unchanged.
Program approach1(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh);

// Merges each target procedure (all heads identical up to renaming) into
// one clause whose body chains the alternatives through nested catch:
//   catch((B1;throw(Id)), Id, catch((B2;throw(Id)), Id, ... catch(Bn,Id,fail)))
// The innermost body is plain; a single-clause procedure degenerates to
// the approach1 shape.
Program approach1a(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh);

// Splits the designated clause bodies at the configured point:
//   H <- B0, btid(..,Id), catch(B1,Id,fail)        (FreshId)
//   H <- B0, catch(B1,arg,fail)                    (FromArg)
Program approach2(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh);

// Database simulation. Target-procedure clauses become
//   p(t) <- btid(t,Id), catch(Id), B        (FreshId)
//   p(t) <- catch(arg), B                   (FromArg)
// and exempt clauses become  p(t) <- \+(target(_)), B.  Appends
//   catch(Id) :- (target(_) -> retract(target(Id)) ; true).
// and marks target/1 dynamic. Backjumps are initiated in the object
// program by `assertz(target(t)), fail`.
Program dbsim(const Program& p, const BackjumpSpec& spec, FreshCounter& fresh);

// Top-level ','-flattening of a body (a fact's body flattens to nothing).
std::vector<TermPtr> flatten_conj(const TermPtr& body);

}  // namespace bjlab

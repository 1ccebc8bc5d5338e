#pragma once

#include <string>
#include <vector>

#include "bjlab/term.hpp"

namespace bjlab {

enum class Port {
  Call,
  Exit,
  Redo,
  Fail,
  Throw,
  Catch,
  Backjump,
  Block,
  Unblock,
  Answer,
};

const char* port_name(Port p);

// One resolution step on the ancestor chain of a Throw: the call node, its
// goal at throw time, and the 1-based clause index it was resolved with.
struct AncestorStep {
  long long node = -1;
  TermPtr goal;
  int clause_index = 0;
};

// Goal and payload are snapshots, fully resolved against the bindings at
// emission time. Ancestry is filled for Throw events only.
struct TraceEvent {
  Port port;
  long long node = -1;
  TermPtr goal;
  TermPtr payload;
  std::vector<AncestorStep> ancestry;
};

// {"port":"Call","node":17,"goal":"sat_cl([true-X],0,-1)","payload":null}
std::string to_json_line(const TraceEvent& e);

}  // namespace bjlab

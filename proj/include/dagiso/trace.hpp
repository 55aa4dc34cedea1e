#pragma once

#include <optional>
#include <string>
#include <vector>

#include <dagiso/statement.hpp>
#include <dagiso/varset.hpp>

namespace dagiso {

enum class TraceKind {
  EdgeRemoved,   // separator found; pair kept out of the skeleton
  VeeOriented,   // phase 1 directed a -> b <- c
  RuleFired,     // phase 2 rule oriented one edge
  ChoicePushed,  // phase 2 free choice (initial or reversed) applied
  FramePopped,   // phase 2 discarded an exhausted choice frame
  PhaseVerdict,  // a phase finished
};

struct TraceEvent {
  TraceKind kind;
  VarId a = -1;
  VarId b = -1;
  VarId c = -1;
  int rule = 0;                  // RuleFired
  std::optional<VarSet> set;     // EdgeRemoved: the separator
  int phase = 0;                 // PhaseVerdict
  bool pass = false;             // PhaseVerdict
  std::string note;              // PhaseVerdict: failure reason
};

using Trace = std::vector<TraceEvent>;

/// One-line rendering, e.g. "rule-fired 1: b->c".
std::string format_event(const TraceEvent& event, const Universe& universe);

}  // namespace dagiso

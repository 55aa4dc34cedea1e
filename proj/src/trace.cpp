#include <dagiso/trace.hpp>

namespace dagiso {

std::string format_event(const TraceEvent& event, const Universe& universe) {
  auto name = [&universe](VarId v) { return universe.name(v); };
  switch (event.kind) {
    case TraceKind::EdgeRemoved:
      return "edge-removed " + name(event.a) + "-" + name(event.b) +
             " sep=" + universe.format(event.set.value_or(VarSet{}));
    case TraceKind::VeeOriented:
      return "vee-oriented " + name(event.a) + "->" + name(event.b) + "<-" + name(event.c);
    case TraceKind::RuleFired:
      return "rule-fired " + std::to_string(event.rule) + ": " + name(event.a) + "->" +
             name(event.b);
    case TraceKind::ChoicePushed:
      return "choice-pushed " + name(event.a) + "->" + name(event.b);
    case TraceKind::FramePopped:
      return "frame-popped " + name(event.a) + "-" + name(event.b);
    case TraceKind::PhaseVerdict:
      return "phase-" + std::to_string(event.phase) +
             (event.pass ? " pass" : " fail: " + event.note);
  }
  return "";
}

}  // namespace dagiso

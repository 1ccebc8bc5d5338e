#include "bjlab/trace.hpp"

#include <nlohmann/json.hpp>

#include "bjlab/reader.hpp"

namespace bjlab {

const char* port_name(Port p) {
  switch (p) {
    case Port::Call: return "Call";
    case Port::Exit: return "Exit";
    case Port::Redo: return "Redo";
    case Port::Fail: return "Fail";
    case Port::Throw: return "Throw";
    case Port::Catch: return "Catch";
    case Port::Backjump: return "Backjump";
    case Port::Block: return "Block";
    case Port::Unblock: return "Unblock";
    case Port::Answer: return "Answer";
  }
  return "?";
}

std::string to_json_line(const TraceEvent& e) {
  nlohmann::json j;
  j["port"] = port_name(e.port);
  j["node"] = e.node;
  j["goal"] = e.goal ? format(e.goal) : "";
  if (e.payload)
    j["payload"] = format(e.payload);
  else
    j["payload"] = nullptr;
  return j.dump();
}

}  // namespace bjlab

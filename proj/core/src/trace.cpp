#include "griphand/trace.hpp"

#include <algorithm>

#include "griphand/errors.hpp"

namespace griphand {

std::string_view to_string(PhaseStatus status) {
  return status == PhaseStatus::Ok ? "ok" : "failed";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Success:
      return "Success";
    case Verdict::Failure:
      return "Failure";
    case Verdict::Stuck:
      return "Stuck";
    case Verdict::Lost:
      return "Lost";
    case Verdict::Pinched:
      return "Pinched";
  }
  return "Unknown";
}

void StrategyTrace::add(TraceRecord record) {
  if (verdict_) {
    throw Error("cannot add a phase to a finished trace");
  }
  records_.push_back(std::move(record));
}

void StrategyTrace::finish(Verdict verdict) {
  if (verdict_) {
    throw Error("trace already has a terminal verdict");
  }
  verdict_ = verdict;
}

Verdict StrategyTrace::verdict() const {
  if (!verdict_) {
    throw Error("trace has no terminal verdict yet");
  }
  return *verdict_;
}

std::optional<std::string> StrategyTrace::failing_phase() const {
  auto it = std::find_if(records_.rbegin(), records_.rend(),
                         [](const TraceRecord& r) { return r.status == PhaseStatus::Failed; });
  if (it == records_.rend()) {
    return std::nullopt;
  }
  return it->phase;
}

PlanarPose StrategyTrace::final_pose() const {
  return records_.empty() ? PlanarPose{} : records_.back().pose;
}

}  // namespace griphand

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace griphand {

/// Object-centre offset from the hand axis, mm.
struct PlanarPose {
  double x = 0.0;
  double y = 0.0;
};

enum class PhaseStatus { Ok, Failed };

/// Terminal outcome of a simulated strategy. The screw-arrangement failures
/// are named after how the screw is lost; alignment failures use Failure.
enum class Verdict { Success, Failure, Stuck, Lost, Pinched };

std::string_view to_string(PhaseStatus status);
std::string_view to_string(Verdict verdict);

struct TraceRecord {
  std::string phase;
  PlanarPose pose;
  double aperture = 0.0;  // commanded jaw/tip opening, mm
  double force = 0.0;     // applied force, N
  double tilt = 0.0;      // hand tilt, rad
  PhaseStatus status = PhaseStatus::Ok;
  std::string note;
};

/// Ordered record of the phases a strategy went through. A trace is built by
/// appending phases and then closed exactly once with a terminal verdict.
class StrategyTrace {
 public:
  explicit StrategyTrace(std::string strategy) : strategy_(std::move(strategy)) {}

  void add(TraceRecord record);

  /// Closes the trace. The failing phase, if any, is the last record whose
  /// status is Failed.
  void finish(Verdict verdict);

  const std::string& strategy() const noexcept { return strategy_; }
  const std::vector<TraceRecord>& records() const noexcept { return records_; }
  bool finished() const noexcept { return verdict_.has_value(); }
  Verdict verdict() const;
  bool succeeded() const { return verdict() == Verdict::Success; }
  std::optional<std::string> failing_phase() const;
  PlanarPose final_pose() const;

 private:
  std::string strategy_;
  std::vector<TraceRecord> records_;
  std::optional<Verdict> verdict_;
};

}  // namespace griphand

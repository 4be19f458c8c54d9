#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pocketgrip/harness.hpp"

namespace pocketgrip {

struct SlideSample {
  double t = 0.0;   ///< [s]
  double fy = 0.0;  ///< tangential force [N]
  double fz = 0.0;  ///< normal force [N]
};

/// Force samples from a sliding friction measurement, strictly increasing in time.
class SlideTrace {
 public:
  SlideTrace() = default;
  /// Throws std::invalid_argument unless timestamps strictly increase.
  explicit SlideTrace(std::vector<SlideSample> samples);

  const std::vector<SlideSample>& samples() const noexcept { return samples_; }
  bool empty() const noexcept { return samples_.empty(); }

 private:
  std::vector<SlideSample> samples_;
};

/// Explicit [start, end] time window, inclusive. An empty optional selects
/// the sliding phase automatically.
struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

class EmptyWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateNormal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMinNormalForce = 1e-3;   ///< [N]
inline constexpr double kSlideOnsetFraction = 0.05;

struct FrictionEstimate {
  double mu = 0.0;
  std::size_t samples = 0;
  double t_start = 0.0;
  double t_end = 0.0;
};

/// Mean of |fy| / |fz| over the window. The automatic window is the longest
/// contiguous run with |fy| above 5 % of the trace maximum.
FrictionEstimate friction_from_trace(const SlideTrace& trace, std::optional<TimeWindow> window = std::nullopt);

/// D_min / D_max. Throws std::domain_error unless 0 < d_min <= d_max.
double roundness_ratio(double d_min, double d_max);

struct TrialRecord {
  double n = 0.0;
  double p = 0.0;
  GraspOutcome outcome = GraspOutcome::Failure;
};

struct RateRow {
  double n = 0.0;
  double p = 0.0;
  std::int64_t trials = 0;
  double success_rate = 0.0;
};

/// Trial counts and success fractions grouped by (n, p), sorted ascending.
std::vector<RateRow> success_table(const std::vector<TrialRecord>& records);

/// A grasp of a deformable object with its post-grasp rim diameters.
struct RoundnessRecord {
  double mass = 0.0;  ///< [kg]
  double n = 0.0;
  double p = 0.0;
  GraspOutcome outcome = GraspOutcome::Failure;
  double d_min = 0.0;  ///< any length unit shared with d_max
  double d_max = 0.0;
};

struct RoundnessRow {
  double mass = 0.0;
  double n = 0.0;
  double p = 0.0;
  std::int64_t trials = 0;
  double success_rate = 0.0;
  std::optional<double> mean_roundness;  ///< over successful grasps only
};

/// Groups by (mass, n, p), sorted ascending.
std::vector<RoundnessRow> roundness_table(const std::vector<RoundnessRecord>& records);

/// Malformed input in one of the CSV interchange files.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// `t,fy,fz` with header.
SlideTrace read_trace_csv(std::istream& is);
/// `n_newton,p_pascal,outcome` with header.
std::vector<TrialRecord> read_trial_records_csv(std::istream& is);
/// `mass_kg,n_newton,p_pascal,outcome,d_min_mm,d_max_mm` with header.
std::vector<RoundnessRecord> read_roundness_csv(std::istream& is);

}  // namespace pocketgrip

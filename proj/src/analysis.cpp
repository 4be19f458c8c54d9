#include "pocketgrip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <string>
#include <tuple>

#include "pocketgrip/table.hpp"

namespace pocketgrip {

SlideTrace::SlideTrace(std::vector<SlideSample> samples) : samples_(std::move(samples)) {
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].t > samples_[i - 1].t))
      throw std::invalid_argument("trace timestamps must be strictly increasing (sample " + std::to_string(i) + ")");
  }
}

FrictionEstimate friction_from_trace(const SlideTrace& trace, std::optional<TimeWindow> window) {
  const auto& s = trace.samples();
  if (s.empty()) throw EmptyWindow("trace has no samples");

  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
  if (window) {
    while (first < s.size() && s[first].t < window->start) ++first;
    last = first;
    while (last < s.size() && s[last].t <= window->end) ++last;
  } else {
    double peak = 0.0;
    for (const auto& x : s) peak = std::max(peak, std::abs(x.fy));
    const double threshold = kSlideOnsetFraction * peak;
    std::size_t run_start = 0;
    std::size_t run_length = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (std::abs(s[i].fy) > threshold) {
        if (run_length == 0) run_start = i;
        ++run_length;
        if (run_length > last - first) {
          first = run_start;
          last = i + 1;
        }
      } else {
        run_length = 0;
      }
    }
  }
  if (first >= last) throw EmptyWindow("no samples fall inside the friction window");

  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double fz = std::abs(s[i].fz);
    if (!(fz > kMinNormalForce))
      throw DegenerateNormal("normal force below 1e-3 N at t = " + format_number(s[i].t));
    sum += std::abs(s[i].fy) / fz;
  }
  const std::size_t count = last - first;
  return {sum / static_cast<double>(count), count, s[first].t, s[last - 1].t};
}

double roundness_ratio(double d_min, double d_max) {
  if (!(d_min > 0.0) || !std::isfinite(d_max)) throw std::domain_error("diameters must be positive and finite");
  if (d_min > d_max) throw std::domain_error("d_min exceeds d_max");
  return d_min / d_max;
}

std::vector<RateRow> success_table(const std::vector<TrialRecord>& records) {
  std::map<std::pair<double, double>, std::pair<std::int64_t, std::int64_t>> groups;
  for (const auto& r : records) {
    auto& [trials, successes] = groups[{r.n, r.p}];
    ++trials;
    if (r.outcome == GraspOutcome::Success) ++successes;
  }
  std::vector<RateRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, counts] : groups) {
    rows.push_back({key.first, key.second, counts.first,
                    static_cast<double>(counts.second) / static_cast<double>(counts.first)});
  }
  return rows;
}

std::vector<RoundnessRow> roundness_table(const std::vector<RoundnessRecord>& records) {
  struct Acc {
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double roundness_mean = 0.0;
  };
  std::map<std::tuple<double, double, double>, Acc> groups;
  for (const auto& r : records) {
    auto& acc = groups[{r.mass, r.n, r.p}];
    ++acc.trials;
    if (r.outcome == GraspOutcome::Success) {
      ++acc.successes;
      acc.roundness_mean += (roundness_ratio(r.d_min, r.d_max) - acc.roundness_mean) / static_cast<double>(acc.successes);
    }
  }
  std::vector<RoundnessRow> rows;
  for (const auto& [key, acc] : groups) {
    RoundnessRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key), acc.trials,
                     static_cast<double>(acc.successes) / static_cast<double>(acc.trials), std::nullopt};
    if (acc.successes > 0) row.mean_roundness = acc.roundness_mean;
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Returns the data rows of a CSV stream after checking its header.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_csv_rows(std::istream& is,
                                                                             const std::vector<std::string>& header) {
  const auto lines = read_lines(is);
  if (lines.empty()) throw CsvError(1, "missing header");
  if (split_csv_line(lines[0]) != header) {
    std::string expected;
    for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
    throw CsvError(1, "expected header '" + expected + "'");
  }
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != header.size())
      throw CsvError(i + 1, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    rows.emplace_back(i + 1, std::move(fields));
  }
  return rows;
}

double number_field(std::size_t line, const std::string& text) {
  double v = 0.0;
  if (!parse_number(text, v)) throw CsvError(line, "not a number: '" + text + "'");
  return v;
}

GraspOutcome outcome_field(std::size_t line, const std::string& text) {
  auto o = parse_outcome(text);
  if (!o) throw CsvError(line, "outcome must be success, slip or failure: '" + text + "'");
  return *o;
}

}  // namespace

SlideTrace read_trace_csv(std::istream& is) {
  std::vector<SlideSample> samples;
  for (const auto& [line, f] : read_csv_rows(is, {"t", "fy", "fz"})) {
    const SlideSample x{number_field(line, f[0]), number_field(line, f[1]), number_field(line, f[2])};
    if (!samples.empty() && !(x.t > samples.back().t)) throw CsvError(line, "timestamps must strictly increase");
    samples.push_back(x);
  }
  return SlideTrace(std::move(samples));
}

std::vector<TrialRecord> read_trial_records_csv(std::istream& is) {
  std::vector<TrialRecord> out;
  for (const auto& [line, f] : read_csv_rows(is, {"n_newton", "p_pascal", "outcome"}))
    out.push_back({number_field(line, f[0]), number_field(line, f[1]), outcome_field(line, f[2])});
  return out;
}

std::vector<RoundnessRecord> read_roundness_csv(std::istream& is) {
  std::vector<RoundnessRecord> out;
  for (const auto& [line, f] :
       read_csv_rows(is, {"mass_kg", "n_newton", "p_pascal", "outcome", "d_min_mm", "d_max_mm"})) {
    out.push_back({number_field(line, f[0]), number_field(line, f[1]), number_field(line, f[2]),
                   outcome_field(line, f[3]), number_field(line, f[4]), number_field(line, f[5])});
  }
  return out;
}

}  // namespace pocketgrip

#pragma once

// Persistent batch surveys: JSON Lines output, crash-safe checkpoints and
// resume, and aggregated plot data for the loneliness spectrum.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lonely/spectrum.hpp"

namespace lonely {

// Tuples written between checkpoint updates.
inline constexpr std::size_t kCheckpointBatch = 1024;

struct SurveyConfig {
  std::int64_t n = 2;
  std::int64_t max_speed = 2;
  bool primitive_only = true;
  std::filesystem::path output_path;
  std::filesystem::path checkpoint_path;  // empty: output_path + ".ckpt"
  unsigned worker_count = 1;
  bool resume = false;
  // Stop after this many batches in this invocation (simulated interruption).
  std::optional<std::size_t> stop_after_batches;

  // Throws std::invalid_argument.
  void validate() const;
  std::filesystem::path effective_checkpoint_path() const;
  // Hash of the fields that determine the output (n, max_speed, primitive_only).
  std::string digest() const;
};

struct Checkpoint {
  std::vector<Speed> last_completed_tuple;
  std::uint64_t records_written = 0;
  std::uint64_t output_bytes = 0;
  std::string config_digest;
};

class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SurveyIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Checkpoint read_checkpoint(const std::filesystem::path& path);
// Writes `path`.tmp and renames it over `path`.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

struct SurveyViolation {
  SpeedSet speeds;
  Rational ml;
  std::string cls;
};

struct SurveySummary {
  std::uint64_t records = 0;
  std::map<std::string, std::uint64_t> counts;  // "discrete", "large", "gap-violation", "lrc-violation"
  std::optional<Rational> min_ml;
  std::optional<SpeedSet> min_ml_speeds;
  std::vector<SurveyViolation> violations;
  bool complete = false;

  std::uint64_t count(const std::string& key) const;
  void add(const SurveyRecord& r);
};

// {"speeds":[...],"ml":"p/q","class":"...","witness":"a/b"}
std::string record_to_jsonl(const SurveyRecord& r);
// Throws std::invalid_argument on malformed input.
SurveyRecord parse_record_line(const std::string& line);

SurveySummary run_survey(const SurveyConfig& config);

struct PlotSummary {
  std::size_t data_rows = 0;
  std::size_t reference_rows = 0;
};

// CSV: ml_numer,ml_denom,ml_decimal,class,count. Data rows (ascending ML)
// are followed by reference rows for s/(ns+1), s <= 20, and the 1/n and
// 1/(n+1) gridlines, whose class starts with "ref:" and whose count is 0.
PlotSummary emit_spectrum_plotdata(std::int64_t n, std::int64_t max_speed, const std::filesystem::path& out,
                                   unsigned workers = 1);

}  // namespace lonely

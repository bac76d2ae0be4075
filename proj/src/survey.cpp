#include "lonely/survey.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lonely/tuples.hpp"

namespace lonely {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string summary_key(const SpectrumClass& cls) {
  return cls.tag == SpectrumClass::Tag::DiscretePart ? "discrete" : cls.label();
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

void SurveyConfig::validate() const {
  if (n < 2) throw std::invalid_argument("survey needs n >= 2");
  if (max_speed < n) throw std::invalid_argument("survey needs max_speed >= n");
  if (worker_count < 1) throw std::invalid_argument("survey needs at least one worker");
  if (output_path.empty()) throw std::invalid_argument("survey needs an output path");
}

fs::path SurveyConfig::effective_checkpoint_path() const {
  if (!checkpoint_path.empty()) return checkpoint_path;
  fs::path p = output_path;
  p += ".ckpt";
  return p;
}

std::string SurveyConfig::digest() const {
  std::ostringstream canon;
  canon << "n=" << n << ";max_speed=" << max_speed << ";primitive=" << (primitive_only ? 1 : 0);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon.str())));
  return buf;
}

Checkpoint read_checkpoint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SurveyIoError("cannot read checkpoint " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    Checkpoint c;
    c.last_completed_tuple = j.at("last_completed_tuple").get<std::vector<Speed>>();
    c.records_written = j.at("records_written").get<std::uint64_t>();
    c.output_bytes = j.at("output_bytes").get<std::uint64_t>();
    c.config_digest = j.at("config_digest").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SurveyIoError("corrupt checkpoint " + path.string() + ": " + e.what());
  }
}

void write_checkpoint(const fs::path& path, const Checkpoint& ckpt) {
  ojson j;
  j["config_digest"] = ckpt.config_digest;
  j["last_completed_tuple"] = ckpt.last_completed_tuple;
  j["records_written"] = ckpt.records_written;
  j["output_bytes"] = ckpt.output_bytes;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    out.flush();
    if (!out) throw SurveyIoError("cannot write checkpoint " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw SurveyIoError("cannot install checkpoint " + path.string() + ": " + ec.message());
}

std::uint64_t SurveySummary::count(const std::string& key) const {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

void SurveySummary::add(const SurveyRecord& r) {
  ++records;
  ++counts[summary_key(r.cls)];
  if (!min_ml || r.ml < *min_ml) {
    min_ml = r.ml;
    min_ml_speeds = r.speeds;
  }
  using Tag = SpectrumClass::Tag;
  if (r.cls.tag == Tag::SpectrumGapViolation || r.cls.tag == Tag::LonelyRunnerViolation) {
    violations.push_back({r.speeds, r.ml, r.cls.label()});
  }
}

std::string record_to_jsonl(const SurveyRecord& r) {
  ojson j;
  j["speeds"] = std::vector<Speed>(r.speeds.speeds().begin(), r.speeds.speeds().end());
  j["ml"] = r.ml.to_string();
  j["class"] = r.cls.label();
  j["witness"] = r.witness_time.to_string();
  return j.dump();
}

SurveyRecord parse_record_line(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    SpeedSet speeds(j.at("speeds").get<std::vector<Speed>>());
    Rational ml = parse_rational(j.at("ml").get<std::string>());
    const auto label = j.at("class").get<std::string>();
    SpectrumClass cls = classify(static_cast<std::int64_t>(speeds.size()), ml);
    if (cls.label() != label) throw std::invalid_argument("class label disagrees with ml: " + label);
    Rational witness = parse_rational(j.at("witness").get<std::string>());
    return {std::move(speeds), std::move(ml), std::move(cls), std::move(witness)};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed survey record: ") + e.what());
  }
}

SurveySummary run_survey(const SurveyConfig& config) {
  config.validate();
  const fs::path ckpt_path = config.effective_checkpoint_path();
  const std::string digest = config.digest();

  SurveySummary summary;
  Checkpoint ckpt{{}, 0, 0, digest};
  bool resuming = false;

  if (config.resume && fs::exists(ckpt_path)) {
    ckpt = read_checkpoint(ckpt_path);
    if (ckpt.config_digest != digest) {
      throw CheckpointMismatch("checkpoint " + ckpt_path.string() + " was written for a different configuration");
    }
    std::error_code ec;
    const auto size = fs::file_size(config.output_path, ec);
    if (ec || size < ckpt.output_bytes) {
      throw SurveyIoError("output " + config.output_path.string() + " is shorter than its checkpoint");
    }
    // Drop anything written after the last checkpoint.
    fs::resize_file(config.output_path, ckpt.output_bytes);
    std::ifstream in(config.output_path);
    std::string line;
    while (std::getline(in, line)) summary.add(parse_record_line(line));
    if (summary.records != ckpt.records_written) {
      throw SurveyIoError("output record count disagrees with checkpoint");
    }
    resuming = true;
  } else {
    fs::remove(ckpt_path);
  }

  std::ofstream out(config.output_path, resuming ? std::ios::app : std::ios::trunc);
  if (!out) throw SurveyIoError("cannot open output " + config.output_path.string());

  TupleEnumerator tuples = resuming && !ckpt.last_completed_tuple.empty()
                               ? TupleEnumerator::after(config.n, config.max_speed, ckpt.last_completed_tuple)
                               : TupleEnumerator(config.n, config.max_speed);

  std::vector<std::int64_t> tuple;
  std::vector<SpeedSet> batch;
  std::size_t batches = 0;
  bool exhausted = false;
  while (!exhausted) {
    batch.clear();
    while (batch.size() < kCheckpointBatch) {
      if (!tuples.next(tuple)) {
        exhausted = true;
        break;
      }
      SpeedSet s(tuple);
      if (config.primitive_only && s.gcd() != 1) continue;
      batch.push_back(std::move(s));
    }
    if (batch.empty()) break;

    auto records = parallel_map(batch, config.worker_count, [](const SpeedSet& s) { return evaluate_record(s); });
    std::string chunk;
    for (const auto& r : records) {
      chunk += record_to_jsonl(r);
      chunk += '\n';
      summary.add(r);
    }
    out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    out.flush();
    if (!out) throw SurveyIoError("write to " + config.output_path.string() + " failed");

    ckpt.last_completed_tuple.assign(batch.back().speeds().begin(), batch.back().speeds().end());
    ckpt.records_written += records.size();
    ckpt.output_bytes += chunk.size();
    write_checkpoint(ckpt_path, ckpt);

    ++batches;
    if (config.stop_after_batches && batches >= *config.stop_after_batches && !exhausted) return summary;
  }
  summary.complete = true;
  return summary;
}

PlotSummary emit_spectrum_plotdata(std::int64_t n, std::int64_t max_speed, const fs::path& path, unsigned workers) {
  std::map<Rational, std::pair<std::string, std::uint64_t>> rows;
  for (const auto& r : survey(n, max_speed, true, workers)) {
    auto [it, inserted] = rows.try_emplace(r.ml, r.cls.label(), 0);
    ++it->second.second;
  }

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw SurveyIoError("cannot open " + path.string());
  auto row = [&](const Rational& ml, const std::string& cls, std::uint64_t count) {
    out << ml.numerator().get_str() << ',' << ml.denominator().get_str() << ',' << to_decimal(ml, 12) << ','
        << cls << ',' << count << '\n';
  };
  out << "ml_numer,ml_denom,ml_decimal,class,count\n";
  PlotSummary summary;
  for (const auto& [ml, info] : rows) {
    row(ml, info.first, info.second);
    ++summary.data_rows;
  }
  const BigInt bn(static_cast<long>(n));
  for (long s = 1; s <= 20; ++s) {
    row(Rational(BigInt(s), bn * s + 1), "ref:discrete:" + std::to_string(s), 0);
    ++summary.reference_rows;
  }
  row(Rational(1, bn), "ref:1/n", 0);
  row(Rational(1, bn + 1), "ref:1/(n+1)", 0);
  summary.reference_rows += 2;
  out.flush();
  if (!out) throw SurveyIoError("write to " + path.string() + " failed");
  return summary;
}

}  // namespace lonely

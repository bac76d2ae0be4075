// Command-line front end.
//
// Exit codes: 0 success / check passed, 1 check failed or counterexample
// found, 2 usage or I/O error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lonely/fast_runner.hpp"
#include "lonely/loneliness.hpp"
#include "lonely/spectrum.hpp"
#include "lonely/survey.hpp"

using namespace lonely;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

ojson mu_json(const MuSelection& mu) {
  ojson j;
  j["k"] = mu.k;
  j["t"] = mu.t_k.to_string();
  j["kind"] = mu_kind_name(mu.kind);
  j["speed_index"] = mu.mu_speed_index;
  j["speed"] = mu.mu_speed;
  j["u"] = mu.u_k.to_string();
  j["weight"] = mu.weight.to_string();
  return j;
}

ojson report_json(const ConditionReport& r) {
  ojson j;
  j["speeds"] = std::vector<Speed>(r.speeds.speeds().begin(), r.speeds.speeds().end());
  j["n"] = r.n;
  j["D"] = r.d;
  j["overall"] = r.overall;
  j["per_q"] = ojson::array();
  for (const auto& c : r.per_q) {
    ojson e;
    e["q"] = c.q;
    e["mu"] = mu_json(c.mu);
    e["equality_holds"] = c.equality_holds;
    e["integrality_holds"] = c.integrality_holds;
    e["quotient"] = c.quotient.to_string();
    j["per_q"].push_back(std::move(e));
  }
  return j;
}

int cmd_ml(const std::vector<Speed>& speeds) {
  const SpeedSet s(speeds);
  const MaxLoneliness ml = max_loneliness(s);
  std::cout << "speeds: " << s.to_string() << '\n';
  std::cout << "ML: " << ml.value << '\n';
  std::cout << "class: " << classify(static_cast<std::int64_t>(s.size()), ml.value).label() << '\n';
  std::cout << "witnesses:\n";
  for (const auto& w : ml.witnesses) {
    std::cout << "  t=" << w.time << " pair=(" << w.i + 1 << ',' << w.j + 1 << ") speeds=(" << s[w.i] << ','
              << s[w.j] << ") m=" << w.m << '\n';
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact maximum-loneliness computations for the lonely runner problem"};
  app.require_subcommand(1);

  std::vector<Speed> ml_speeds;
  auto* ml = app.add_subcommand("ml", "Print ML, witnesses and spectrum class of a speed set");
  ml->add_option("speeds", ml_speeds, "Speeds")->required();

  SurveyConfig survey_cfg;
  bool include_all = false;
  std::size_t max_batches = 0;
  std::string out_path, ckpt_path;
  auto* sv = app.add_subcommand("survey", "Survey all n-tuples up to a maximum speed into a JSONL file");
  sv->add_option("--n", survey_cfg.n, "Number of runners")->required();
  sv->add_option("--max-speed", survey_cfg.max_speed, "Largest speed")->required();
  sv->add_flag("--primitive", survey_cfg.primitive_only, "Only gcd-1 tuples (default)");
  sv->add_flag("--all", include_all, "Include tuples with a common factor");
  sv->add_option("--out", out_path, "Output JSONL file")->required();
  sv->add_option("--checkpoint", ckpt_path, "Checkpoint file (default: OUT.ckpt)");
  sv->add_flag("--resume", survey_cfg.resume, "Continue from the checkpoint");
  sv->add_option("--workers", survey_cfg.worker_count, "Worker threads")->check(CLI::PositiveNumber);
  sv->add_option("--max-batches", max_batches, "Stop after this many checkpointed batches");

  std::int64_t tight_n = 0, tight_max = 0;
  unsigned tight_workers = 1;
  auto* tight = app.add_subcommand("tight", "List gcd-1 tight speed sets");
  tight->add_option("--n", tight_n)->required();
  tight->add_option("--max-speed", tight_max)->required();
  tight->add_option("--workers", tight_workers)->check(CLI::PositiveNumber);

  std::string cond_speeds;
  std::int64_t cond_n = 0;
  auto* cond = app.add_subcommand("condition", "Check condition (II.b) for a tight set of n-1 speeds");
  cond->add_option("--speeds", cond_speeds, "v1,...,v_{n-1}")->required();
  cond->add_option("--n", cond_n)->required();

  std::string pred_speeds;
  std::int64_t pred_q = 0;
  Speed pred_vn = 0;
  auto* pred = app.add_subcommand("predict", "Compare the fast-runner prediction with the exact ML");
  pred->add_option("--speeds", pred_speeds)->required();
  pred->add_option("--q", pred_q)->required();
  pred->add_option("--vn", pred_vn)->required();

  std::string stab_speeds;
  std::int64_t stab_q = 0, stab_run = 5;
  Speed stab_cap = 0;
  auto* stab = app.add_subcommand("stabilize", "Find where the prediction starts matching the exact ML");
  stab->add_option("--speeds", stab_speeds)->required();
  stab->add_option("--q", stab_q)->required();
  stab->add_option("--run-length", stab_run)->check(CLI::PositiveNumber);
  stab->add_option("--cap", stab_cap, "Search cap (default 4*v_{n-1}^4)");

  std::int64_t cons_n = 0, cons_s = 0;
  auto* cons = app.add_subcommand("construction", "Check ML(1,...,n-1,ns) = s/(ns+1)");
  cons->add_option("--n", cons_n)->required();
  cons->add_option("--s", cons_s)->required();

  std::int64_t plot_n = 0, plot_max = 0;
  std::string plot_out;
  auto* plot = app.add_subcommand("spectrum-plot", "Write aggregated spectrum CSV");
  plot->add_option("--n", plot_n)->required();
  plot->add_option("--max-speed", plot_max)->required();
  plot->add_option("--out", plot_out)->required();

  std::int64_t small_n = 0;
  std::string small_factor = "6/5";
  auto* small = app.add_subcommand("small-speeds", "Check all n-subsets of {1..floor(factor*n)}");
  small->add_option("--n", small_n)->required();
  small->add_option("--factor", small_factor, "Rational bound factor, e.g. 6/5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (*ml) return cmd_ml(ml_speeds);

    if (*sv) {
      survey_cfg.primitive_only = !include_all;
      survey_cfg.output_path = out_path;
      survey_cfg.checkpoint_path = ckpt_path;
      if (max_batches > 0) survey_cfg.stop_after_batches = max_batches;
      const SurveySummary sum = run_survey(survey_cfg);
      ojson j;
      j["records"] = sum.records;
      j["complete"] = sum.complete;
      j["counts"] = sum.counts;
      j["min_ml"] = sum.min_ml ? sum.min_ml->to_string() : "";
      j["min_ml_speeds"] = sum.min_ml_speeds ? sum.min_ml_speeds->to_string() : "";
      j["violations"] = ojson::array();
      for (const auto& v : sum.violations) {
        j["violations"].push_back({{"speeds", v.speeds.to_string()}, {"ml", v.ml.to_string()}, {"class", v.cls}});
      }
      std::cout << j.dump(2) << '\n';
      return sum.violations.empty() ? kPass : kFail;
    }

    if (*tight) {
      for (const auto& s : tight_sets(tight_n, tight_max, tight_workers)) std::cout << s.to_string() << '\n';
      return kPass;
    }

    if (*cond) {
      const auto report = check_condition_iib(parse_speed_set(cond_speeds), cond_n);
      std::cout << report_json(report).dump(2) << '\n';
      return report.overall ? kPass : kFail;
    }

    if (*pred) {
      const SpeedSet s = parse_speed_set(pred_speeds);
      const Rational predicted = predicted_ml(s, pred_q, pred_vn);
      const Rational exact = max_loneliness(s.with(pred_vn)).value;
      std::cout << "predicted: " << predicted << "\nexact: " << exact << "\nmatch: " << std::boolalpha
                << (predicted == exact) << '\n';
      return predicted == exact ? kPass : kFail;
    }

    if (*stab) {
      const SpeedSet s = parse_speed_set(stab_speeds);
      try {
        const Speed threshold =
            stabilization_threshold(s, stab_q, stab_run, stab_cap > 0 ? std::optional<Speed>(stab_cap) : std::nullopt);
        std::cout << "threshold: " << threshold << '\n';
        return kPass;
      } catch (const StabilizationError& e) {
        std::cout << e.what() << '\n';
        return kFail;
      }
    }

    if (*cons) {
      const Construction c = construction_set(cons_n, cons_s);
      const Rational engine = max_loneliness(c.speeds).value;
      std::cout << "speeds: " << c.speeds.to_string() << "\nexpected: " << c.expected << "\nengine: " << engine
                << "\nmatch: " << std::boolalpha << (engine == c.expected) << '\n';
      return engine == c.expected ? kPass : kFail;
    }

    if (*plot) {
      const PlotSummary p = emit_spectrum_plotdata(plot_n, plot_max, plot_out);
      std::cout << "data rows: " << p.data_rows << "\nreference rows: " << p.reference_rows << '\n';
      return kPass;
    }

    if (*small) {
      const auto report = small_speed_check(small_n, parse_rational(small_factor));
      std::cout << "n: " << report.n << "\nbound: " << report.bound << "\nsets: " << report.entries.size()
                << "\ncounterexamples: " << report.counterexamples.size()
                << "\nml = 3/(3n+2): " << report.three_over_3n_plus_2.size() << '\n';
      for (const auto& r : report.counterexamples) {
        std::cout << "  " << r.speeds.to_string() << " ML=" << r.ml << " " << r.cls.label() << '\n';
      }
      return report.conforms() ? kPass : kFail;
    }
  } catch (const StabilizationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

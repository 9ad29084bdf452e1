// socdist: command-line front end for the social-distancing analytics engine.
//
//   socdist run       --detections dets.jsonl [--config cfg.json] [--report r.jsonl] ...
//   socdist simulate  --seed 7 --people 12 --frames 300 --detections d.jsonl --truth t.jsonl
//   socdist evaluate  --predictions d.jsonl --truth t.jsonl [--iou 0.5]
//   socdist epidemic  --beta 0.3 --delta 0.1 --population 10000 --infected 10 --k 10 ...

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "distancing/config.hpp"
#include "distancing/detection_metrics.hpp"
#include "distancing/epidemic.hpp"
#include "distancing/errors.hpp"
#include "distancing/pipeline.hpp"
#include "distancing/records.hpp"
#include "distancing/scenario.hpp"

namespace {

using namespace distancing;

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

// Output file, or stdout for "" and "-".
class OutputFile {
public:
  explicit OutputFile(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InputError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

std::unique_ptr<std::ofstream> optional_output(const std::string& path) {
  if (path.empty()) return nullptr;
  auto out = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

struct RunOptions {
  std::string detections;
  std::string config;
  std::string report;
  std::string events;
  std::string overlay;
  std::string summary;
};

int cmd_run(const RunOptions& opt) {
  PipelineConfig config;
  if (!opt.config.empty()) config = load_config(opt.config);
  const std::string report_path = opt.report.empty() ? config.output.report_path : opt.report;
  const std::string events_path = opt.events.empty() ? config.output.event_log_path : opt.events;
  const std::string overlay_path = opt.overlay.empty() ? config.output.overlay_path : opt.overlay;
  const std::string summary_path = opt.summary.empty() ? config.output.summary_path : opt.summary;

  std::ifstream in(opt.detections, std::ios::binary);
  if (!in) throw InputError("cannot open detections '" + opt.detections + "'");

  OutputFile reports(report_path);
  auto events = optional_output(events_path);
  auto overlay = optional_output(overlay_path);

  RunSinks sinks;
  sinks.reports = &reports.stream();
  sinks.events = events.get();
  sinks.overlay = overlay.get();
  sinks.warnings = &std::cerr;
  const RunSummary summary = run(config, in, sinks);

  if (summary_path.empty()) {
    std::cerr << serialize(summary) << '\n';
  } else {
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + summary_path + "' for writing");
    out << serialize(summary) << '\n';
  }
  return 0;
}

struct SimulateOptions {
  ScenarioConfig scenario;
  std::string detections;
  std::string truth;
};

int cmd_simulate(const SimulateOptions& opt) {
  const Scenario s = generate_scenario(opt.scenario);
  OutputFile dets(opt.detections);
  write_records(dets.stream(), s.detections);
  if (!opt.truth.empty()) {
    OutputFile truth(opt.truth);
    write_records(truth.stream(), s.ground_truth);
  }
  std::cerr << "simulate: " << s.detections.size() << " detections (" << s.missed << " missed, "
            << s.false_positives << " false positives), " << s.ground_truth.size()
            << " truth boxes\n";
  return 0;
}

struct EvaluateOptions {
  std::string predictions;
  std::string truth;
  double iou = 0.5;
};

int cmd_evaluate(const EvaluateOptions& opt) {
  const ParsedStream preds = parse_stream_file(opt.predictions);
  const ParsedStream truth = parse_stream_file(opt.truth);
  for (const ParseWarning& w : preds.warnings) {
    std::cerr << "warning: predictions line " << w.line << " skipped: " << w.message << '\n';
  }
  for (const ParseWarning& w : truth.warnings) {
    std::cerr << "warning: truth line " << w.line << " skipped: " << w.message << '\n';
  }

  std::map<FrameId, FrameEvaluation> frames;
  for (const FrameBatch& b : preds.batches) {
    auto& f = frames[b.frame_id];
    for (const DetectionRecord& r : b.records) f.predictions.push_back({r.box, r.confidence});
  }
  for (const FrameBatch& b : truth.batches) {
    auto& f = frames[b.frame_id];
    for (const DetectionRecord& r : b.records) f.truth.push_back(r.box);
  }
  std::vector<FrameEvaluation> ordered;
  ordered.reserve(frames.size());
  for (auto& [id, f] : frames) ordered.push_back(std::move(f));

  const EvaluationSummary s = evaluate_frames(ordered, opt.iou);
  std::cout << nlohmann::ordered_json{{"frames", ordered.size()},
                                      {"iou_threshold", opt.iou},
                                      {"true_positives", s.true_positives},
                                      {"false_positives", s.false_positives},
                                      {"false_negatives", s.false_negatives},
                                      {"ap", s.average_precision},
                                      {"map", s.mean_average_precision}}
                   .dump(2)
            << '\n';
  return 0;
}

struct EpidemicOptions {
  epidemic::Params params;
  std::string awareness = "none";
  double infected = 10.0;
  double recovered = 0.0;
  double dt = 0.01;
  std::size_t steps = 20000;
  std::size_t stride = 1;
};

int cmd_epidemic(EpidemicOptions opt) {
  opt.params.awareness = epidemic::parse_awareness(opt.awareness);
  epidemic::validate(opt.params);
  if (opt.infected < 0.0 || opt.recovered < 0.0 ||
      opt.infected + opt.recovered > opt.params.population) {
    throw ParameterError("epidemic: need 0 <= I0, 0 <= R0, I0 + R0 <= N");
  }
  const epidemic::State initial{opt.params.population - opt.infected - opt.recovered, opt.infected,
                                opt.recovered, 0.0};
  const auto traj = epidemic::integrate(initial, opt.params, opt.dt, opt.steps);
  const std::size_t stride = std::max<std::size_t>(1, opt.stride);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.size()) continue;
    const auto& s = traj[i];
    std::cout << nlohmann::ordered_json{{"t", s.t},
                                        {"S", s.susceptible},
                                        {"I", s.infected},
                                        {"R", s.recovered},
                                        {"a", epidemic::awareness(s, opt.params)}}
                     .dump()
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-distancing analytics over person detection streams"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Track detections and report proximity groups");
  run_cmd->add_option("-d,--detections", run_opt.detections, "Detection stream (JSON lines)")
      ->required();
  run_cmd->add_option("-c,--config", run_opt.config, "Pipeline config (JSON)");
  run_cmd->add_option("--report", run_opt.report, "Frame report output; stdout if omitted");
  run_cmd->add_option("--events", run_opt.events, "Violation event log output");
  run_cmd->add_option("--overlay", run_opt.overlay, "Overlay record output");
  run_cmd->add_option("--summary", run_opt.summary, "Run summary output; stderr if omitted");

  SimulateOptions sim_opt;
  auto& sc = sim_opt.scenario;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic scenario");
  sim_cmd->add_option("--width", sc.frame_width, "Frame width (px)");
  sim_cmd->add_option("--height", sc.frame_height, "Frame height (px)");
  sim_cmd->add_option("--people", sc.person_count, "Number of people");
  sim_cmd->add_option("--frames", sc.frame_count, "Number of frames");
  sim_cmd->add_option("--interval-ms", sc.frame_interval_ms, "Milliseconds between frames");
  sim_cmd->add_option("--min-speed", sc.min_speed, "Minimum speed (px/frame)");
  sim_cmd->add_option("--max-speed", sc.max_speed, "Maximum speed (px/frame)");
  sim_cmd->add_option("--min-box-height", sc.min_height, "Minimum box height (px)");
  sim_cmd->add_option("--max-box-height", sc.max_height, "Maximum box height (px)");
  sim_cmd->add_option("--aspect", sc.aspect, "Box width / height");
  sim_cmd->add_option("--noise", sc.noise_std, "Box noise std (px)");
  sim_cmd->add_option("--miss-rate", sc.miss_rate, "Probability a person is not detected");
  sim_cmd->add_option("--fp-rate", sc.false_positive_rate, "Mean false positives per frame");
  sim_cmd->add_option("--descriptor-dim", sc.descriptor_dim, "Descriptor dimension (0 = none)");
  sim_cmd->add_option("--descriptor-noise", sc.descriptor_noise, "Descriptor noise std");
  sim_cmd->add_option("--seed", sc.seed, "Random seed");
  sim_cmd->add_option("--detections", sim_opt.detections, "Detection output; stdout if omitted");
  sim_cmd->add_option("--truth", sim_opt.truth, "Ground-truth output");

  EvaluateOptions eval_opt;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score detections against ground truth");
  eval_cmd->add_option("--predictions", eval_opt.predictions, "Predicted detections")->required();
  eval_cmd->add_option("--truth", eval_opt.truth, "Ground truth")->required();
  eval_cmd->add_option("--iou", eval_opt.iou, "IoU threshold for a true positive");

  EpidemicOptions epi_opt;
  auto* epi_cmd = app.add_subcommand("epidemic", "Integrate the awareness SIR model");
  epi_cmd->add_option("--beta", epi_opt.params.beta, "Infection rate");
  epi_cmd->add_option("--delta", epi_opt.params.delta, "Recovery rate");
  epi_cmd->add_option("-N,--population", epi_opt.params.population, "Population size");
  epi_cmd->add_option("--infected", epi_opt.infected, "Initial infected");
  epi_cmd->add_option("--recovered", epi_opt.recovered, "Initial recovered");
  epi_cmd->add_option("-k,--k", epi_opt.params.k, "Awareness behaviour parameter");
  epi_cmd->add_option("--awareness", epi_opt.awareness, "none | long-term | short-term");
  epi_cmd->add_option("--dt", epi_opt.dt, "Step size");
  epi_cmd->add_option("--steps", epi_opt.steps, "Number of steps");
  epi_cmd->add_option("--stride", epi_opt.stride, "Emit every n-th state");
  epi_cmd->add_flag("--literal-infection-term", epi_opt.params.literal_infection_term,
                    "Use I in place of S in dI/dt (does not conserve N)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run_opt);
    if (*sim_cmd) return cmd_simulate(sim_opt);
    if (*eval_cmd) return cmd_evaluate(eval_opt);
    if (*epi_cmd) return cmd_epidemic(epi_opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

// rideflow command line: reproduces the three deployment stages end to end.
//   run    simulate the world against a staged graph and write the run log
//   train  fit the wait-time model on a collected dataset
//   graph  export a staged dataflow graph as DOT

#include "rideflow/data/collector.hpp"
#include "rideflow/data/dataset.hpp"
#include "rideflow/fbp/dot.hpp"
#include "rideflow/model/wait_model.hpp"
#include "rideflow/ride/app.hpp"
#include "rideflow/sim/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunArguments {
  std::string stage = "min";
  rideflow::sim::SimConfig config;
  std::string dataset_path;
  std::string model_path;
  std::string runlog_path = "runlog.jsonl";
};

void add_sim_flags(CLI::App& cmd, rideflow::sim::SimConfig& config) {
  cmd.add_option("--ticks", config.ticks, "Run length in ticks");
  cmd.add_option("--drivers", config.n_drivers, "Number of drivers");
  cmd.add_option("--seed", config.seed, "PRNG seed");
  cmd.add_option("--rate", config.request_rate, "Expected ride requests per tick");
  cmd.add_option("--speed", config.driver_speed, "Driver speed in distance units per tick");
  cmd.add_option("--world-size", config.world_size, "Side length of the square world");
  cmd.add_option("--cancel-prob", config.cancel_probability,
                 "Probability that a request is fated to cancel");
}

int cmd_run(const RunArguments& args) {
  using rideflow::ride::Stage;
  const Stage stage = rideflow::ride::parse_stage(args.stage);

  std::optional<rideflow::model::WaitModel> wait_model;
  if (stage == Stage::Ml) wait_model = rideflow::model::load(args.model_path);

  rideflow::ride::RideGraph graph = rideflow::ride::build_app(stage, wait_model);
  std::optional<rideflow::data::Collector> collector;
  if (stage == Stage::Data) collector = rideflow::data::install_collection(graph);

  const rideflow::sim::RunLog log = rideflow::sim::run(args.config, graph);
  rideflow::sim::write_runlog(log, args.runlog_path);

  if (collector) {
    const auto rows = collector->rows();
    rideflow::data::write_csv(rows, args.dataset_path);
    std::cout << "wrote " << rows.size() << " dataset rows to " << args.dataset_path << "\n";
  }
  std::cout << "ran " << args.config.ticks << " ticks (stage " << args.stage << "), runlog at "
            << args.runlog_path << "\n";
  return kExitOk;
}

int cmd_train(const std::string& dataset_path, const std::string& model_path) {
  const auto rows = rideflow::data::read_csv(dataset_path);
  const auto model = rideflow::model::fit(rows);
  rideflow::model::save(model, model_path);
  char line[160];
  std::snprintf(line, sizeof(line), "slope %.9f intercept %.9f r2 %.9f n_samples %llu",
                model.slope, model.intercept, rideflow::model::r_squared(model, rows),
                static_cast<unsigned long long>(model.n_samples));
  std::cout << line << "\n";
  return kExitOk;
}

int cmd_graph(const std::string& stage_name, const std::string& dot_path,
              const std::string& model_path) {
  using rideflow::ride::Stage;
  const Stage stage = rideflow::ride::parse_stage(stage_name);

  std::optional<rideflow::model::WaitModel> wait_model;
  if (stage == Stage::Ml) {
    // Only the topology matters here; fall back to a unit model when no
    // trained one is supplied.
    wait_model = model_path.empty() ? rideflow::model::WaitModel{0.0, 1.0, 2}
                                    : rideflow::model::load(model_path);
  }
  const auto graph = rideflow::ride::build_app(stage, wait_model);
  const std::string dot = rideflow::fbp::export_dot(graph);
  if (dot_path.empty() || dot_path == "-") {
    std::cout << dot;
  } else {
    std::ofstream file(dot_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + dot_path + "' for writing");
    file << dot;
    if (!file.flush()) throw std::runtime_error("failed writing '" + dot_path + "'");
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-based ride allocation: simulator, staged graphs, wait-time model"};
  app.require_subcommand(1);

  RunArguments run_args;
  CLI::App* run = app.add_subcommand("run", "Simulate the world against a staged graph");
  run->add_option("--stage", run_args.stage, "Deployment stage: min, data or ml")
      ->check(CLI::IsMember({"min", "data", "ml"}));
  add_sim_flags(*run, run_args.config);
  run->add_option("--dataset", run_args.dataset_path, "CSV output path (stage data)");
  run->add_option("--model", run_args.model_path, "Trained model to load (stage ml)");
  run->add_option("--runlog", run_args.runlog_path, "Run log output path");

  std::string train_dataset;
  std::string train_model = "wait_model.json";
  CLI::App* train = app.add_subcommand("train", "Fit the wait-time model on a dataset CSV");
  train->add_option("--dataset", train_dataset, "Dataset CSV to train on")->required();
  train->add_option("--model", train_model, "Where to save the fitted model");

  std::string graph_stage = "min";
  std::string graph_dot;
  std::string graph_model;
  CLI::App* graph = app.add_subcommand("graph", "Export a staged dataflow graph as DOT");
  graph->add_option("--stage", graph_stage, "Deployment stage: min, data or ml")
      ->check(CLI::IsMember({"min", "data", "ml"}));
  graph->add_option("--dot", graph_dot, "DOT output path (default: stdout)");
  graph->add_option("--model", graph_model, "Optional trained model for stage ml");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (run_args.stage == "data" && run_args.dataset_path.empty()) {
        std::cerr << "--dataset is required for --stage data\n";
        return kExitUsage;
      }
      if (run_args.stage != "data" && !run_args.dataset_path.empty()) {
        std::cerr << "--dataset is only valid for --stage data\n";
        return kExitUsage;
      }
      if (run_args.stage == "ml" && run_args.model_path.empty()) {
        std::cerr << "--model is required for --stage ml\n";
        return kExitUsage;
      }
      if (run_args.stage != "ml" && !run_args.model_path.empty()) {
        std::cerr << "--model is only valid for --stage ml\n";
        return kExitUsage;
      }
      return cmd_run(run_args);
    }
    if (train->parsed()) return cmd_train(train_dataset, train_model);
    if (graph->parsed()) return cmd_graph(graph_stage, graph_dot, graph_model);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

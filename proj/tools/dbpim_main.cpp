#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbpim/errors.hpp"
#include "dbpim/pipeline.hpp"

namespace {

using namespace dbpim;

// Exit codes: 0 ok, 1 other errors, 2 parse (arguments or files), 3 shape,
// 4 capacity, 5 verification mismatch.
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitShape = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitMismatch = 5;

MacroConfig make_config(const std::string& path) {
  if (path.empty()) {
    MacroConfig config;
    config.validate();
    return config;
  }
  return load_config(path);
}

SimMode sim_mode_from(const std::string& name) {
  if (name == "dbpim") {
    return SimMode::DbPim;
  }
  if (name == "dense") {
    return SimMode::DenseBaseline;
  }
  throw ArgumentError("unknown simulation mode '" + name + "'");
}

struct QuantizeArgs {
  std::string weights;
  std::string out;
  std::string mode;
  std::string config;
};

int cmd_quantize(const QuantizeArgs& args) {
  MacroConfig config = make_config(args.config);
  TableMode mode = config.fta_mode;
  if (!args.mode.empty()) {
    mode = args.mode == "atmost" ? TableMode::AtMost : TableMode::Exact;
  }
  Tensor tensor = load_tensor(args.weights, config.max_tensor_elements);
  QuantizedModel model = quantize_tensor(tensor, mode);
  QuantizeSummary summary = summarize_quantization(model, tensor);
  Json j = quantized_to_json(model, summary);
  if (args.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text_file(args.out, j.dump(2) + "\n");
    std::cout << "quantized " << model.filters.size() << " filters x "
              << model.reduction << " weights -> " << args.out
              << " (thresholds 0/1/2: " << summary.threshold_histogram[0] << "/"
              << summary.threshold_histogram[1] << "/"
              << summary.threshold_histogram[2]
              << ", mean abs error " << summary.mean_abs_error << ")\n";
  }
  return 0;
}

struct CompileArgs {
  std::string model;
  std::string out;
  std::string mode = "dbpim";
  std::string config;
};

int cmd_compile(const CompileArgs& args) {
  MacroConfig config = make_config(args.config);
  QuantizedModel model = model_from_file(args.model, config);
  CompiledBundle bundle = compile_model(model, config, sim_mode_from(args.mode));
  Json j = compiled_to_json(bundle.layer, bundle.stream);
  if (args.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text_file(args.out, j.dump(2) + "\n");
    std::cout << "compiled " << bundle.layer.num_filters << " filters x "
              << bundle.layer.reduction << " weights -> " << args.out << " ("
              << bundle.layer.passes.size() << " passes, "
              << bundle.stream.ops.size() << " instructions)\n";
  }
  return 0;
}

struct SimulateArgs {
  std::vector<std::string> weights;
  std::vector<std::string> inputs;
  std::string mode = "dbpim";
  bool chain = false;
  std::string config;
  std::string out;
  std::string trace;
};

int cmd_simulate(const SimulateArgs& args) {
  MacroConfig config = make_config(args.config);
  std::vector<QuantizedModel> models;
  models.reserve(args.weights.size());
  for (const auto& path : args.weights) {
    models.push_back(model_from_file(path, config));
  }
  std::vector<Tensor> inputs;
  inputs.reserve(args.inputs.size());
  for (const auto& path : args.inputs) {
    inputs.push_back(load_tensor(path, config.max_tensor_elements));
  }
  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!args.trace.empty()) {
    trace_file.open(args.trace, std::ios::binary);
    if (!trace_file) {
      throw Error(args.trace + ": cannot open trace file for writing");
    }
    trace = &trace_file;
  }
  RunReport report = simulate_stack(models, inputs, config,
                                    sim_mode_from(args.mode), args.chain, trace);
  Json j = run_report_to_json(report);
  if (args.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text_file(args.out, j.dump(2) + "\n");
    std::cout << "simulated " << report.layers.size() << " layer(s) in "
              << report.total_cycles << " cycles (" << args.mode << ") -> "
              << args.out << "\n";
  }
  return 0;
}

struct ReportArgs {
  std::string dbpim;
  std::string dense;
  std::string out;
  std::string csv;
  std::string config;
};

int cmd_report(const ReportArgs& args) {
  MacroConfig config = make_config(args.config);
  RunReport db = load_run_report(args.dbpim);
  RunReport dense = load_run_report(args.dense);
  SimReport report = speedup_and_energy(db, dense, config.energy);
  Json j = sim_report_to_json(report);
  if (!args.csv.empty()) {
    write_text_file(args.csv, sim_report_to_csv(report));
  }
  if (args.out.empty() && args.csv.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (!args.out.empty()) {
    write_text_file(args.out, j.dump(2) + "\n");
  }
  std::cout << "speedup ";
  if (report.speedup_defined) {
    std::cout << report.speedup;
  } else {
    std::cout << "undefined";
  }
  std::cout << ", energy savings ";
  if (report.savings_defined) {
    std::cout << report.energy_savings;
  } else {
    std::cout << "undefined";
  }
  std::cout << "\n";
  return 0;
}

struct VerifyArgs {
  int cases = 100;
  std::vector<std::string> weights;
  std::vector<std::string> inputs;
  std::string config;
};

int cmd_verify(const VerifyArgs& args) {
  MacroConfig config = make_config(args.config);
  int failures = 0;
  if (!args.weights.empty() || !args.inputs.empty()) {
    if (args.weights.size() != args.inputs.size()) {
      throw ShapeError("verify: need one --inputs per --weights");
    }
    for (std::size_t i = 0; i < args.weights.size(); ++i) {
      QuantizedModel model = model_from_file(args.weights[i], config);
      Tensor tensor = load_tensor(args.inputs[i], config.max_tensor_elements);
      if (tensor.dims.size() != 1) {
        throw ShapeError("verify: input tensors must be 1-D");
      }
      auto mismatch =
          verify_model(model, tensor.data, tensor.signedness, config);
      std::cout << args.weights[i] << ": ";
      if (mismatch) {
        failures += 1;
        std::cout << "MISMATCH: " << *mismatch << "\n";
      } else {
        std::cout << "ok\n";
      }
    }
    std::cout << "verify: " << args.weights.size() << " case(s), " << failures
              << " failure(s)\n";
  } else {
    failures = verify_random_cases(config, args.cases, std::cout);
    std::cout << "verify: " << args.cases << " case(s), " << failures
              << " failure(s)\n";
  }
  return failures == 0 ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic-block PIM model: weight approximation, compilation, simulation"};
  app.require_subcommand(1);

  QuantizeArgs quantize_args;
  auto* quantize = app.add_subcommand(
      "quantize", "Approximate a weights tensor under per-filter digit thresholds");
  quantize->add_option("--weights", quantize_args.weights, "2-D i8 weights tensor (JSON)")
      ->required();
  quantize->add_option("--out", quantize_args.out, "output model file");
  quantize->add_option("--mode", quantize_args.mode, "table mode")
      ->check(CLI::IsMember({"exact", "atmost"}));
  quantize->add_option("--config", quantize_args.config, "config file");

  CompileArgs compile_args;
  auto* compile = app.add_subcommand(
      "compile", "Map a model onto the macro array and emit its instruction stream");
  compile->add_option("--model", compile_args.model,
                      "weights tensor or quantized model (JSON)")
      ->required();
  compile->add_option("--out", compile_args.out, "output file");
  compile->add_option("--mode", compile_args.mode, "dbpim or dense")
      ->check(CLI::IsMember({"dbpim", "dense"}));
  compile->add_option("--config", compile_args.config, "config file");

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "Run layers through the simulator");
  simulate->add_option("--weights", simulate_args.weights,
                       "weights tensor or quantized model, one per layer")
      ->required();
  simulate->add_option("--inputs", simulate_args.inputs, "1-D input tensor(s)")
      ->required();
  simulate->add_option("--mode", simulate_args.mode, "dbpim or dense")
      ->check(CLI::IsMember({"dbpim", "dense"}));
  simulate->add_flag("--chain", simulate_args.chain,
                     "feed each layer's outputs to the next through the affine hook");
  simulate->add_option("--config", simulate_args.config, "config file");
  simulate->add_option("--out", simulate_args.out, "output report file");
  simulate->add_option("--trace", simulate_args.trace, "cycle trace file");

  ReportArgs report_args;
  auto* report = app.add_subcommand(
      "report", "Join a dbpim run report and a dense run report into a comparison");
  report->add_option("--dbpim", report_args.dbpim, "dbpim run report")->required();
  report->add_option("--dense", report_args.dense, "dense run report")->required();
  report->add_option("--out", report_args.out, "comparison JSON file");
  report->add_option("--csv", report_args.csv, "comparison CSV file");
  report->add_option("--config", report_args.config, "config file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Cross-check both simulator modes against the integer reference");
  verify->add_option("--cases", verify_args.cases, "number of random cases")
      ->check(CLI::PositiveNumber);
  verify->add_option("--weights", verify_args.weights,
                     "explicit weights tensor or quantized model");
  verify->add_option("--inputs", verify_args.inputs, "matching 1-D input tensor");
  verify->add_option("--config", verify_args.config, "config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (quantize->parsed()) {
      return cmd_quantize(quantize_args);
    }
    if (compile->parsed()) {
      return cmd_compile(compile_args);
    }
    if (simulate->parsed()) {
      return cmd_simulate(simulate_args);
    }
    if (report->parsed()) {
      return cmd_report(report_args);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_args);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShape;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}

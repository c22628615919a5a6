#include "dbpim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>

#include "dbpim/errors.hpp"
#include "dbpim/oracle.hpp"

namespace dbpim {

namespace {

// Engine-only random helpers so streams are identical across standard
// library implementations.
int rand_int(std::mt19937_64& rng, int lo, int hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

bool rand_bool(std::mt19937_64& rng) {
  return (rng() & 1) != 0;
}

std::vector<std::vector<int>> weight_matrix(const QuantizedModel& model) {
  std::vector<std::vector<int>> rows;
  rows.reserve(model.filters.size());
  for (const auto& f : model.filters) {
    rows.emplace_back(f.weights.begin(), f.weights.end());
  }
  return rows;
}

std::array<int, 3> threshold_histogram(const QuantizedModel& model) {
  std::array<int, 3> hist{};
  for (const auto& f : model.filters) {
    hist[static_cast<std::size_t>(f.phi_threshold)] += 1;
  }
  return hist;
}

}  // namespace

QuantizedModel quantize_tensor(const Tensor& weights, TableMode mode) {
  if (weights.dims.size() != 2) {
    throw ShapeError("quantize: weights tensor must be 2-D (filters x reduction), got " +
                     std::to_string(weights.dims.size()) + "-D");
  }
  if (weights.signedness != Signedness::Signed8) {
    throw ShapeError("quantize: weights tensor must have dtype i8");
  }
  auto filters_count = weights.dims[0];
  auto reduction = weights.dims[1];
  std::vector<Filter> filters(filters_count);
  for (std::size_t f = 0; f < filters_count; ++f) {
    filters[f].filter_id = static_cast<int>(f);
    filters[f].weights.reserve(reduction);
    for (std::size_t r = 0; r < reduction; ++r) {
      filters[f].weights.push_back(
          static_cast<std::int8_t>(weights.data[f * reduction + r]));
    }
  }
  QuantizedModel model;
  model.mode = mode;
  model.reduction = static_cast<int>(reduction);
  model.filters = fta_quantize(filters, mode);
  return model;
}

QuantizeSummary summarize_quantization(const QuantizedModel& model,
                                       const Tensor& original) {
  QuantizeSummary summary;
  summary.threshold_histogram = threshold_histogram(model);
  double abs_error = 0.0;
  std::size_t count = 0;
  auto reduction = static_cast<std::size_t>(model.reduction);
  for (std::size_t f = 0; f < model.filters.size(); ++f) {
    for (std::size_t r = 0; r < reduction; ++r) {
      abs_error += std::abs(static_cast<double>(model.filters[f].weights[r]) -
                            static_cast<double>(original.data[f * reduction + r]));
      count += 1;
    }
  }
  summary.mean_abs_error = count ? abs_error / static_cast<double>(count) : 0.0;
  return summary;
}

QuantizedModel model_from_file(const std::string& path, const MacroConfig& config) {
  Json j = load_json(path);
  auto tag = json_type_tag(j, path);
  if (tag == "dbpim-tensor") {
    return quantize_tensor(tensor_from_json(j, path, config.max_tensor_elements),
                           config.fta_mode);
  }
  if (tag == "dbpim-quantized") {
    return quantized_from_json(j, path);
  }
  throw ParseError(path + ": expected a weights tensor or quantized model, found type '" +
                   tag + "'");
}

CompiledBundle compile_model(const QuantizedModel& model, const MacroConfig& config,
                             SimMode mode) {
  CompiledBundle bundle;
  bundle.layer = mode == SimMode::DbPim ? map_layer(model.filters, config)
                                        : map_layer_dense(model.filters, config);
  bundle.stream = emit_instructions(bundle.layer);
  return bundle;
}

std::vector<int> affine_chain_step(std::span<const std::int64_t> outputs,
                                   const AffineHook& affine, Signedness signedness) {
  int lo = signedness == Signedness::Signed8 ? -128 : 0;
  int hi = signedness == Signedness::Signed8 ? 127 : 255;
  std::vector<int> next;
  next.reserve(outputs.size());
  for (auto v : outputs) {
    std::int64_t scaled = (v * affine.mul) >> affine.shift;
    scaled = std::clamp<std::int64_t>(scaled, lo, hi);
    next.push_back(static_cast<int>(scaled));
  }
  return next;
}

LayerRunReport simulate_layer(const QuantizedModel& model, std::span<const int> inputs,
                              Signedness signedness, const MacroConfig& config,
                              SimMode mode, int layer_index, std::ostream* trace) {
  MacroConfig cfg = config;
  cfg.input_signedness = signedness;
  CompiledBundle bundle = compile_model(model, cfg, mode);
  SimOutput sim = run_layer(bundle.layer, inputs, cfg, mode, trace);

  LayerRunReport report;
  report.layer_index = layer_index;
  report.filters = static_cast<int>(model.filters.size());
  report.reduction = model.reduction;
  report.phi_threshold_histogram = threshold_histogram(model);
  report.cycles = sim.cycles;
  report.tallies = sim.tallies;
  report.util = utilization(sim.tallies.effective_cells, sim.tallies.total_cells);
  report.energy = energy_of(sim.tallies, cfg.energy);
  report.outputs = std::move(sim.outputs);
  return report;
}

RunReport simulate_stack(const std::vector<QuantizedModel>& models,
                         const std::vector<Tensor>& input_tensors,
                         const MacroConfig& config, SimMode mode, bool chain,
                         std::ostream* trace) {
  if (models.empty()) {
    throw ArgumentError("simulate: no layers given");
  }
  if (chain) {
    if (input_tensors.size() != 1) {
      throw ShapeError("simulate: chained runs take exactly one input tensor, got " +
                       std::to_string(input_tensors.size()));
    }
  } else if (input_tensors.size() != models.size()) {
    throw ShapeError("simulate: " + std::to_string(models.size()) +
                     " layers need as many input tensors, got " +
                     std::to_string(input_tensors.size()));
  }
  for (const auto& t : input_tensors) {
    if (t.dims.size() != 1) {
      throw ShapeError("simulate: input tensors must be 1-D");
    }
  }

  RunReport report;
  report.mode = mode;
  Signedness signedness = input_tensors.front().signedness;
  std::vector<int> chained;
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::span<const int> inputs;
    if (chain) {
      inputs = i == 0 ? std::span<const int>(input_tensors.front().data)
                      : std::span<const int>(chained);
    } else {
      signedness = input_tensors[i].signedness;
      inputs = input_tensors[i].data;
    }
    if (static_cast<int>(inputs.size()) != models[i].reduction) {
      throw ShapeError("simulate: layer " + std::to_string(i) + " reduction " +
                       std::to_string(models[i].reduction) + " but " +
                       std::to_string(inputs.size()) + " inputs");
    }
    if (trace) {
      *trace << "layer " << i << " mode "
             << (mode == SimMode::DbPim ? "dbpim" : "dense") << "\n";
    }
    report.layers.push_back(simulate_layer(models[i], inputs, signedness, config,
                                           mode, static_cast<int>(i), trace));
    if (chain && i + 1 < models.size()) {
      chained = affine_chain_step(report.layers.back().outputs, config.affine,
                                  signedness);
    }
  }
  report.finalize();
  return report;
}

std::optional<std::string> verify_model(const QuantizedModel& model,
                                        std::span<const int> inputs,
                                        Signedness signedness,
                                        const MacroConfig& config) {
  MacroConfig cfg = config;
  cfg.input_signedness = signedness;

  auto reference =
      oracle::dot_reference(weight_matrix(model), inputs, signedness);

  auto db_layer = map_layer(model.filters, cfg);
  auto db = run_layer(db_layer, inputs, cfg, SimMode::DbPim);
  auto dense_layer = map_layer_dense(model.filters, cfg);
  auto dense = run_layer(dense_layer, inputs, cfg, SimMode::DenseBaseline);

  auto compare = [&](const std::vector<std::int64_t>& got,
                     const char* who) -> std::optional<std::string> {
    for (std::size_t f = 0; f < reference.outputs.size(); ++f) {
      if (got[f] != reference.outputs[f]) {
        return std::string(who) + " disagrees with the reference at filter " +
               std::to_string(f) + ": got " + std::to_string(got[f]) +
               ", expected " + std::to_string(reference.outputs[f]);
      }
    }
    return std::nullopt;
  };
  if (auto m = compare(db.outputs, "dbpim")) {
    return m;
  }
  if (auto m = compare(dense.outputs, "dense")) {
    return m;
  }
  return std::nullopt;
}

int verify_random_cases(const MacroConfig& config, int cases, std::ostream& log) {
  std::mt19937_64 rng(config.seed);
  int failures = 0;
  for (int n = 0; n < cases; ++n) {
    MacroConfig cfg = config;
    cfg.num_macros = rand_bool(rng) ? 2 : 1;
    cfg.compartments_per_macro = rand_bool(rng) ? 16 : 8;
    cfg.dbmus_per_compartment = rand_bool(rng) ? 16 : 8;
    cfg.rows_per_dbmu = 64;
    cfg.input_group_size = rand_bool(rng) ? cfg.compartments_per_macro
                                          : cfg.compartments_per_macro / 2;
    cfg.dense_filters_per_pass = 1;
    cfg.enable_input_skipping = rand_bool(rng);
    cfg.fta_mode = rand_bool(rng) ? TableMode::Exact : TableMode::AtMost;
    Signedness signedness =
        rand_bool(rng) ? Signedness::Unsigned8 : Signedness::Signed8;

    int filters_count = rand_int(rng, 1, 8);
    int reduction = rand_int(rng, 1, 4 * cfg.compartments_per_macro);

    // Weight styles: uniform, zero-heavy, small magnitudes, extremes.
    int style = rand_int(rng, 0, 3);
    std::vector<Filter> filters(static_cast<std::size_t>(filters_count));
    for (int f = 0; f < filters_count; ++f) {
      filters[static_cast<std::size_t>(f)].filter_id = f;
      auto& w = filters[static_cast<std::size_t>(f)].weights;
      for (int r = 0; r < reduction; ++r) {
        int value = 0;
        switch (style) {
          case 0: value = rand_int(rng, -128, 127); break;
          case 1: value = rand_bool(rng) ? 0 : rand_int(rng, -128, 127); break;
          case 2: value = rand_int(rng, -8, 8); break;
          default:
            value = rand_bool(rng) ? rand_int(rng, 96, 127)
                                   : rand_int(rng, -128, -96);
            break;
        }
        w.push_back(static_cast<std::int8_t>(value));
      }
    }
    QuantizedModel model;
    model.mode = cfg.fta_mode;
    model.reduction = reduction;
    model.filters = fta_quantize(filters, cfg.fta_mode);

    std::vector<int> inputs;
    bool zero_heavy = rand_bool(rng);
    for (int r = 0; r < reduction; ++r) {
      int lo = signedness == Signedness::Signed8 ? -128 : 0;
      int hi = signedness == Signedness::Signed8 ? 127 : 255;
      int v = rand_int(rng, lo, hi);
      if (zero_heavy && rand_bool(rng)) {
        v = 0;
      }
      inputs.push_back(v);
    }

    auto mismatch = verify_model(model, inputs, signedness, cfg);
    log << "case " << n << ": filters=" << filters_count
        << " reduction=" << reduction << " macros=" << cfg.num_macros
        << " compartments=" << cfg.compartments_per_macro
        << " dbmus=" << cfg.dbmus_per_compartment
        << " group=" << cfg.input_group_size
        << " mode=" << (cfg.fta_mode == TableMode::Exact ? "exact" : "atmost")
        << " dtype=" << dtype_name(signedness)
        << " skip=" << (cfg.enable_input_skipping ? "on" : "off");
    if (mismatch) {
      failures += 1;
      log << " MISMATCH: " << *mismatch << "\n";
    } else {
      log << " ok\n";
    }
  }
  return failures;
}

}  // namespace dbpim

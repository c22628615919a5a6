#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbpim/compiler.hpp"
#include "dbpim/config.hpp"
#include "dbpim/macro_sim.hpp"
#include "dbpim/metrics.hpp"
#include "dbpim/tensor_io.hpp"

namespace dbpim {

// End-to-end flows shared by the command-line tool and the test suites.

// Threshold selection plus weight approximation over a 2-D i8 weights
// tensor (filters x reduction).
QuantizedModel quantize_tensor(const Tensor& weights, TableMode mode);

// Histogram and mean absolute approximation error vs the original weights.
QuantizeSummary summarize_quantization(const QuantizedModel& model,
                                       const Tensor& original);

// Accepts either a raw weights tensor (quantized on the fly under
// config.fta_mode) or an already-quantized model file.
QuantizedModel model_from_file(const std::string& path, const MacroConfig& config);

struct CompiledBundle {
  CompiledLayer layer;
  InstructionStream stream;
};

CompiledBundle compile_model(const QuantizedModel& model, const MacroConfig& config,
                             SimMode mode);

// Chained-layer transform: y = clamp((x * mul) >> shift) into the domain of
// `signedness`.
std::vector<int> affine_chain_step(std::span<const std::int64_t> outputs,
                                   const AffineHook& affine, Signedness signedness);

LayerRunReport simulate_layer(const QuantizedModel& model, std::span<const int> inputs,
                              Signedness signedness, const MacroConfig& config,
                              SimMode mode, int layer_index,
                              std::ostream* trace = nullptr);

// Simulates a stack of layers. Without chaining, one input tensor per model
// is required. With chaining, exactly one input tensor feeds the first
// layer and each layer's outputs pass through the affine hook into the
// next; every tensor must be 1-D.
RunReport simulate_stack(const std::vector<QuantizedModel>& models,
                         const std::vector<Tensor>& input_tensors,
                         const MacroConfig& config, SimMode mode, bool chain,
                         std::ostream* trace = nullptr);

// Cross-checks both simulator modes against the plain integer reference on
// one model and input vector. Returns the first mismatch found, if any.
std::optional<std::string> verify_model(const QuantizedModel& model,
                                        std::span<const int> inputs,
                                        Signedness signedness,
                                        const MacroConfig& config);

// Randomized verification sweep: `cases` random (geometry, weights, inputs,
// mode, signedness, skipping) draws seeded from config.seed, each checked
// with verify_model. Per-case lines go to `log`; returns the number of
// failing cases.
int verify_random_cases(const MacroConfig& config, int cases, std::ostream& log);

}  // namespace dbpim

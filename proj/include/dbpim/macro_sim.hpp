#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dbpim/compiler.hpp"
#include "dbpim/config.hpp"
#include "dbpim/ipu.hpp"

namespace dbpim {

// Event counts gathered over one simulated layer run. Cell counts follow
// the activation-utilization definition: for every executed bit cycle,
// total_cells counts the cells allocated to the active row slice and
// effective_cells the subset that store a non-zero digit (or bit).
struct SimTallies {
  std::uint64_t compute_cycles = 0;
  std::uint64_t skipped_cycles = 0;
  std::uint64_t row_loads = 0;
  std::uint64_t effective_cells = 0;
  std::uint64_t total_cells = 0;
  std::uint64_t postprocess_ops = 0;
  std::uint64_t buffer_reads = 0;
  std::uint64_t buffer_writes = 0;
};

struct PassStats {
  int pass_id = 0;
  std::uint64_t compute_cycles = 0;
  std::uint64_t effective_cells = 0;
  std::uint64_t total_cells = 0;
};

struct SimOutput {
  std::vector<std::int64_t> outputs;  // one per filter, filter order
  std::uint64_t cycles = 0;
  SimTallies tallies;
  std::vector<PassStats> pass_stats;
};

// Mutable execution state of the macro array: the pass currently resident
// and its per-filter-slot accumulators.
struct MacroState {
  const CompiledLayer* layer = nullptr;
  int pass_index = -1;
  int tile = -1;
  std::vector<std::int64_t> accumulators;
  std::uint64_t cycle = 0;
  SimTallies tallies;
  std::ostream* trace = nullptr;
  std::vector<std::int64_t> terms;  // scratch
};

// Contribution of one cell for one input bit: sign * bit * 2^(2*index +
// position); disabled cells contribute zero.
std::int64_t dbmu_compute(const DbmuSlot& cell, int input_bit);

// Exact integer sum of per-cell contribution terms.
std::int64_t csd_adder_tree(std::span<const std::int64_t> terms);

// Executes one bit cycle of the bound (pass, tile): gathers every filter
// slot's terms across the compartments, runs the adder tree, and
// shift-accumulates with the column weight. input_bits holds one bit per
// compartment. The state must be bound to a pass (pass_index >= 0).
void run_bit_cycle(MacroState& state, const ColumnStep& step,
                   std::span<const std::uint8_t> input_bits);

// Executes a compiled layer's instruction stream over one input vector.
// `mode` must match the layer's compiled mode; the dense baseline always
// runs all 8 bit columns of one full-width group, DbPim analyzes inputs in
// groups of config.input_group_size and skips all-zero columns when
// enable_input_skipping is set. Reported cycles count macro bit cycles,
// plus row loads when include_weight_load_cycles is set.
SimOutput run_layer(const CompiledLayer& layer, std::span<const int> inputs,
                    const MacroConfig& config, SimMode mode,
                    std::ostream* trace = nullptr);

}  // namespace dbpim

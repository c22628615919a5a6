#include "dbpim/macro_sim.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>

#include "dbpim/errors.hpp"

namespace dbpim {

namespace {

// Accumulators model 32-bit post-processing registers; the simulator runs
// them in 64 bits and checks the bound on every update.
constexpr std::int64_t kAccumulatorBound = std::numeric_limits<std::int32_t>::max();

struct GroupData {
  int begin = 0;
  int end = 0;
  std::array<bool, 8> zero_column{};
};

struct TileData {
  std::vector<std::uint8_t> bytes;  // per compartment, zero padded
  int active = 0;                   // compartments carrying real inputs
  std::vector<GroupData> groups;
};

struct GroupCells {
  std::uint64_t allocated = 0;
  std::uint64_t enabled = 0;
};

}  // namespace

std::int64_t dbmu_compute(const DbmuSlot& cell, int input_bit) {
  if (!cell.enabled || input_bit == 0) {
    return 0;
  }
  return std::int64_t{cell.sign} << (2 * cell.index + cell.position);
}

std::int64_t csd_adder_tree(std::span<const std::int64_t> terms) {
  std::int64_t sum = 0;
  for (auto t : terms) {
    sum += t;
  }
  return sum;
}

void run_bit_cycle(MacroState& state, const ColumnStep& step,
                   std::span<const std::uint8_t> input_bits) {
  const auto& layer = *state.layer;
  const auto& pass = layer.passes[static_cast<std::size_t>(state.pass_index)];
  int row = pass.row_begin + state.tile;

  state.cycle += 1;
  state.tallies.compute_cycles += 1;
  if (state.trace) {
    *state.trace << "cycle " << state.cycle << " pass " << pass.pass_id
                 << " tile " << state.tile << " col " << step.column
                 << " weight " << step.shift_weight;
  }
  for (std::size_t s = 0; s < pass.filter_ids.size(); ++s) {
    state.terms.clear();
    for (int c = 0; c < layer.compartments; ++c) {
      int bit = input_bits[static_cast<std::size_t>(c)];
      for (int j = 0; j < pass.slots_per_filter; ++j) {
        const auto& cell = layer.at(
            pass.macro, c, row, static_cast<int>(s) * pass.slots_per_filter + j);
        state.terms.push_back(dbmu_compute(cell, bit));
      }
    }
    std::int64_t tree = csd_adder_tree(state.terms);
    auto& acc = state.accumulators[s];
    acc += step.shift_weight * tree;
    if (acc > kAccumulatorBound || acc < -kAccumulatorBound - 1) {
      throw Error("run_bit_cycle: accumulator for filter " +
                  std::to_string(pass.filter_ids[s]) +
                  " exceeded the 32-bit bound");
    }
    state.tallies.postprocess_ops += 1;
    if (state.trace) {
      *state.trace << " | slot" << s << " sum " << tree << " acc " << acc;
    }
  }
  if (state.trace) {
    *state.trace << "\n";
  }
}

SimOutput run_layer(const CompiledLayer& layer, std::span<const int> inputs,
                    const MacroConfig& config, SimMode mode,
                    std::ostream* trace) {
  config.validate();
  if (layer.mode != mode) {
    throw ArgumentError("run_layer: compiled image mode does not match the requested mode");
  }
  if (layer.compartments != config.compartments_per_macro ||
      layer.dbmus != config.dbmus_per_compartment ||
      layer.rows != config.rows_per_dbmu ||
      layer.num_macros != config.num_macros) {
    throw ArgumentError("run_layer: compiled image geometry does not match the config");
  }
  if (static_cast<int>(inputs.size()) != layer.reduction) {
    throw ShapeError("run_layer: " + std::to_string(inputs.size()) +
                     " inputs for reduction " + std::to_string(layer.reduction));
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      byte_repr(inputs[i], config.input_signedness);
    } catch (const RangeError& e) {
      throw ShapeError("run_layer: input element " + std::to_string(i) + ": " +
                       e.what());
    }
  }
  std::size_t feature_bytes =
      inputs.size() + static_cast<std::size_t>(layer.num_filters) * 4;
  if (feature_bytes > config.feature_buffer_bytes) {
    throw CapacityError("run_layer: inputs plus outputs need " +
                        std::to_string(feature_bytes) +
                        " bytes, exceeding feature buffer of " +
                        std::to_string(config.feature_buffer_bytes) + " bytes");
  }

  InstructionStream stream = emit_instructions(layer);
  std::size_t instruction_bytes = stream.ops.size() * kInstructionBytes;
  if (instruction_bytes > config.instruction_buffer_bytes) {
    throw CapacityError("run_layer: " + std::to_string(stream.ops.size()) +
                        " instructions (" + std::to_string(instruction_bytes) +
                        " bytes) exceed instruction buffer of " +
                        std::to_string(config.instruction_buffer_bytes) + " bytes");
  }

  bool skipping = mode == SimMode::DbPim && config.enable_input_skipping;
  int group_size =
      mode == SimMode::DbPim ? config.input_group_size : layer.compartments;
  int num_groups = layer.compartments / group_size;
  int tiles = layer.passes.empty() ? 0 : layer.passes.front().tiles;

  // Byte images and per-group zero-column masks for every tile.
  std::vector<TileData> tile_data(static_cast<std::size_t>(tiles));
  for (int t = 0; t < tiles; ++t) {
    auto& td = tile_data[static_cast<std::size_t>(t)];
    int base = t * layer.compartments;
    td.active = std::min(layer.compartments, layer.reduction - base);
    td.bytes.assign(static_cast<std::size_t>(layer.compartments), 0);
    for (int c = 0; c < td.active; ++c) {
      td.bytes[static_cast<std::size_t>(c)] = byte_repr(
          inputs[static_cast<std::size_t>(base + c)], config.input_signedness);
    }
    for (int g = 0; g < num_groups; ++g) {
      GroupData gd;
      gd.begin = g * group_size;
      gd.end = gd.begin + group_size;
      std::uint8_t any = 0;
      for (int c = gd.begin; c < gd.end; ++c) {
        any |= td.bytes[static_cast<std::size_t>(c)];
      }
      for (int b = 0; b < 8; ++b) {
        gd.zero_column[static_cast<std::size_t>(b)] = ((any >> b) & 1) == 0;
      }
      td.groups.push_back(gd);
    }
  }

  // Allocated / enabled cell counts per (pass, tile, group).
  std::vector<std::vector<std::vector<GroupCells>>> cells(layer.passes.size());
  for (const auto& pass : layer.passes) {
    auto& per_tile = cells[static_cast<std::size_t>(pass.pass_id)];
    per_tile.assign(static_cast<std::size_t>(pass.tiles),
                    std::vector<GroupCells>(static_cast<std::size_t>(num_groups)));
    for (int t = 0; t < pass.tiles; ++t) {
      int row = pass.row_begin + t;
      for (int g = 0; g < num_groups; ++g) {
        auto& counter = per_tile[static_cast<std::size_t>(t)][static_cast<std::size_t>(g)];
        for (int c = g * group_size; c < (g + 1) * group_size; ++c) {
          for (int dbmu = 0; dbmu < layer.dbmus; ++dbmu) {
            const auto& cell = layer.at(pass.macro, c, row, dbmu);
            counter.allocated += (cell.owner_slot >= 0);
            counter.enabled += cell.enabled;
          }
        }
      }
    }
  }

  SimOutput out;
  out.outputs.assign(static_cast<std::size_t>(layer.num_filters), 0);
  out.pass_stats.reserve(layer.passes.size());
  for (const auto& pass : layer.passes) {
    out.pass_stats.push_back({pass.pass_id, 0, 0, 0});
  }

  MacroState state;
  state.layer = &layer;
  state.trace = trace;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(layer.compartments));

  for (const auto& ins : stream.ops) {
    switch (ins.op) {
      case OpKind::LoadWeights: {
        state.pass_index = ins.pass_id;
        state.tile = -1;
        const auto& pass = layer.passes[static_cast<std::size_t>(ins.pass_id)];
        state.accumulators.assign(pass.filter_ids.size(), 0);
        state.tallies.row_loads +=
            static_cast<std::uint64_t>(ins.row_end - ins.row);
        if (trace) {
          *trace << "load pass " << ins.pass_id << " macro " << ins.macro
                 << " rows [" << ins.row << ", " << ins.row_end << ")\n";
        }
        break;
      }
      case OpKind::Compute: {
        state.tile = ins.tile;
        const auto& td = tile_data[static_cast<std::size_t>(ins.tile)];
        auto& stats = out.pass_stats[static_cast<std::size_t>(ins.pass_id)];
        for (int g = 0; g < num_groups; ++g) {
          const auto& gd = td.groups[static_cast<std::size_t>(g)];
          bool zero = gd.zero_column[static_cast<std::size_t>(ins.column)];
          if (skipping && zero) {
            state.tallies.skipped_cycles += 1;
            if (trace) {
              *trace << "skip pass " << ins.pass_id << " tile " << ins.tile
                     << " col " << ins.column << " group " << g << "\n";
            }
            continue;
          }
          std::fill(bits.begin(), bits.end(), std::uint8_t{0});
          for (int c = gd.begin; c < gd.end; ++c) {
            bits[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
                (td.bytes[static_cast<std::size_t>(c)] >> ins.column) & 1);
          }
          ColumnStep step{ins.column,
                          column_weight(ins.column, config.input_signedness)};
          run_bit_cycle(state, step, bits);
          const auto& counter =
              cells[static_cast<std::size_t>(ins.pass_id)]
                   [static_cast<std::size_t>(ins.tile)][static_cast<std::size_t>(g)];
          state.tallies.total_cells += counter.allocated;
          state.tallies.effective_cells += counter.enabled;
          stats.compute_cycles += 1;
          stats.total_cells += counter.allocated;
          stats.effective_cells += counter.enabled;
        }
        break;
      }
      case OpKind::Accumulate: {
        const auto& td = tile_data[static_cast<std::size_t>(ins.tile)];
        state.tallies.buffer_reads += static_cast<std::uint64_t>(td.active);
        if (trace) {
          *trace << "accumulate pass " << ins.pass_id << " tile " << ins.tile
                 << "\n";
        }
        break;
      }
      case OpKind::WriteBack: {
        const auto& pass = layer.passes[static_cast<std::size_t>(ins.pass_id)];
        if (trace) {
          *trace << "writeback pass " << ins.pass_id;
        }
        for (std::size_t s = 0; s < pass.filter_ids.size(); ++s) {
          out.outputs[static_cast<std::size_t>(pass.filter_ids[s])] =
              state.accumulators[s];
          if (trace) {
            *trace << " filter " << pass.filter_ids[s] << " = "
                   << state.accumulators[s];
          }
        }
        if (trace) {
          *trace << "\n";
        }
        state.tallies.buffer_writes += pass.filter_ids.size();
        state.pass_index = -1;
        break;
      }
    }
  }

  out.tallies = state.tallies;
  out.cycles = out.tallies.compute_cycles;
  if (config.include_weight_load_cycles) {
    out.cycles += out.tallies.row_loads;
  }
  return out;
}

}  // namespace dbpim

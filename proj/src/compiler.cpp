#include "dbpim/compiler.hpp"

#include <algorithm>
#include <string>

#include "dbpim/errors.hpp"

namespace dbpim {

namespace {

int checked_reduction(std::span<const ThresholdedFilter> filters) {
  if (filters.empty()) {
    throw ShapeError("map_layer: layer has no filters");
  }
  auto reduction = filters.front().weights.size();
  if (reduction == 0) {
    throw ShapeError("map_layer: filters have no weights");
  }
  for (const auto& f : filters) {
    if (f.weights.size() != reduction) {
      throw ShapeError("map_layer: filter " + std::to_string(f.filter_id) +
                       " has " + std::to_string(f.weights.size()) +
                       " weights, expected " + std::to_string(reduction));
    }
    if (f.per_weight_blocks.size() != f.weights.size()) {
      throw ShapeError("map_layer: filter " + std::to_string(f.filter_id) +
                       " block list does not match its weight list");
    }
    if (f.phi_threshold < 0 || f.phi_threshold > 2) {
      throw ArgumentError("map_layer: filter " + std::to_string(f.filter_id) +
                          " threshold " + std::to_string(f.phi_threshold) +
                          " outside [0, 2]");
    }
    for (const auto& set : f.per_weight_blocks) {
      if (set.phi > f.phi_threshold) {
        throw ShapeError("map_layer: filter " + std::to_string(f.filter_id) +
                         " stores a weight with " + std::to_string(set.phi) +
                         " digits above its threshold " +
                         std::to_string(f.phi_threshold));
      }
    }
  }
  return static_cast<int>(reduction);
}

CompiledLayer init_layer(SimMode mode, std::span<const ThresholdedFilter> filters,
                         int reduction, const MacroConfig& config) {
  CompiledLayer layer;
  layer.mode = mode;
  layer.num_filters = static_cast<int>(filters.size());
  layer.reduction = reduction;
  layer.num_macros = config.num_macros;
  layer.compartments = config.compartments_per_macro;
  layer.dbmus = config.dbmus_per_compartment;
  layer.rows = config.rows_per_dbmu;
  layer.phi_threshold_by_filter.reserve(filters.size());
  for (const auto& f : filters) {
    layer.phi_threshold_by_filter.push_back(f.phi_threshold);
  }
  auto cells_per_macro = static_cast<std::size_t>(layer.compartments) *
                         static_cast<std::size_t>(layer.rows) *
                         static_cast<std::size_t>(layer.dbmus);
  layer.images.assign(static_cast<std::size_t>(layer.num_macros),
                      std::vector<DbmuSlot>(cells_per_macro));
  return layer;
}

int tiles_for(int reduction, const MacroConfig& config) {
  int tiles = (reduction + config.compartments_per_macro - 1) /
              config.compartments_per_macro;
  if (tiles > config.rows_per_dbmu) {
    throw CapacityError(
        "map_layer: reduction " + std::to_string(reduction) + " needs " +
        std::to_string(tiles) + " rows per pass, exceeding rows_per_dbmu = " +
        std::to_string(config.rows_per_dbmu));
  }
  return tiles;
}

// First-fit placement of a pass needing `tiles` rows.
void place_pass(PassPlan& pass, std::vector<int>& rows_used,
                const MacroConfig& config) {
  for (std::size_t m = 0; m < rows_used.size(); ++m) {
    if (rows_used[m] + pass.tiles <= config.rows_per_dbmu) {
      pass.macro = static_cast<int>(m);
      pass.row_begin = rows_used[m];
      rows_used[m] += pass.tiles;
      return;
    }
  }
  throw CapacityError(
      "map_layer: pass " + std::to_string(pass.pass_id) + " needs " +
      std::to_string(pass.tiles) + " rows but the array of " +
      std::to_string(config.num_macros) + " macro(s) x " +
      std::to_string(config.rows_per_dbmu) + " rows is full");
}

void append_row_schedule(CompiledLayer& layer, const PassPlan& pass) {
  for (int t = 0; t < pass.tiles; ++t) {
    layer.row_schedule.push_back({pass.pass_id, pass.macro, pass.row_begin + t,
                                  t, t * layer.compartments});
  }
}

void check_storage_budgets(const CompiledLayer& layer, const MacroConfig& config,
                           const char* who) {
  std::size_t allocated = 0;
  std::size_t enabled = 0;
  for (const auto& image : layer.images) {
    for (const auto& cell : image) {
      allocated += (cell.owner_slot >= 0);
      enabled += cell.enabled;
    }
  }
  std::size_t weight_bytes = (allocated * 2 + 7) / 8;  // two bits per cell
  if (weight_bytes > config.weight_buffer_bytes) {
    throw CapacityError(std::string(who) + ": weight image of " +
                        std::to_string(weight_bytes) +
                        " bytes exceeds weight buffer of " +
                        std::to_string(config.weight_buffer_bytes) + " bytes");
  }
  if (layer.mode == SimMode::DbPim) {
    std::size_t meta_bytes = enabled * kMetadataRecordBytes;
    if (meta_bytes > config.meta_buffer_bytes) {
      throw CapacityError(std::string(who) + ": " + std::to_string(enabled) +
                          " metadata records (" + std::to_string(meta_bytes) +
                          " bytes) exceed meta buffer of " +
                          std::to_string(config.meta_buffer_bytes) + " bytes");
    }
  }
}

}  // namespace

CompiledLayer map_layer(std::span<const ThresholdedFilter> filters,
                        const MacroConfig& config) {
  config.validate();
  int reduction = checked_reduction(filters);
  int tiles = tiles_for(reduction, config);

  CompiledLayer layer = init_layer(SimMode::DbPim, filters, reduction, config);

  // Pack same-threshold filters together, low thresholds first.
  std::vector<int> pending[3];
  for (std::size_t i = 0; i < filters.size(); ++i) {
    pending[static_cast<std::size_t>(filters[i].phi_threshold)].push_back(
        static_cast<int>(i));
  }
  layer.skipped_zero_filters = pending[0];

  std::vector<int> rows_used(static_cast<std::size_t>(config.num_macros), 0);
  for (int threshold = 1; threshold <= 2; ++threshold) {
    const auto& ids = pending[static_cast<std::size_t>(threshold)];
    int slots_per_pass = config.dbmus_per_compartment / threshold;
    for (std::size_t begin = 0; begin < ids.size();
         begin += static_cast<std::size_t>(slots_per_pass)) {
      PassPlan pass;
      pass.pass_id = static_cast<int>(layer.passes.size());
      pass.phi_threshold = threshold;
      pass.slots_per_filter = threshold;
      pass.tiles = tiles;
      auto end = std::min(ids.size(), begin + static_cast<std::size_t>(slots_per_pass));
      pass.filter_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(begin),
                             ids.begin() + static_cast<std::ptrdiff_t>(end));
      place_pass(pass, rows_used, config);

      for (int t = 0; t < pass.tiles; ++t) {
        int row = pass.row_begin + t;
        int base = t * layer.compartments;
        int active = std::min(layer.compartments, reduction - base);
        for (std::size_t s = 0; s < pass.filter_ids.size(); ++s) {
          const auto& filter = filters[static_cast<std::size_t>(pass.filter_ids[s])];
          for (int c = 0; c < active; ++c) {
            const auto& blocks =
                filter.per_weight_blocks[static_cast<std::size_t>(base + c)];
            int dbmu = static_cast<int>(s) * pass.slots_per_filter;
            for (const auto& block : blocks.blocks) {
              if (block.kind != BlockKind::CompPattern) {
                continue;
              }
              auto& cell = layer.at(pass.macro, c, row, dbmu);
              cell.enabled = true;
              cell.position = block.position_in_block;
              cell.sign = block.sign;
              cell.index = block.index;
              cell.owner_slot = static_cast<std::int16_t>(s);
              ++dbmu;
            }
            // Pad the slot group: allocated to the filter, storing zero.
            for (; dbmu < static_cast<int>(s + 1) * pass.slots_per_filter; ++dbmu) {
              auto& cell = layer.at(pass.macro, c, row, dbmu);
              cell.owner_slot = static_cast<std::int16_t>(s);
            }
          }
        }
      }
      append_row_schedule(layer, pass);
      layer.passes.push_back(std::move(pass));
    }
  }
  check_storage_budgets(layer, config, "map_layer");
  return layer;
}

CompiledLayer map_layer_dense(std::span<const ThresholdedFilter> filters,
                              const MacroConfig& config) {
  config.validate();
  int reduction = checked_reduction(filters);
  int tiles = tiles_for(reduction, config);

  CompiledLayer layer = init_layer(SimMode::DenseBaseline, filters, reduction, config);

  std::vector<int> rows_used(static_cast<std::size_t>(config.num_macros), 0);
  for (std::size_t begin = 0; begin < filters.size();
       begin += static_cast<std::size_t>(config.dense_filters_per_pass)) {
    PassPlan pass;
    pass.pass_id = static_cast<int>(layer.passes.size());
    pass.phi_threshold = 8;
    pass.slots_per_filter = 8;
    pass.tiles = tiles;
    auto end = std::min(filters.size(),
                        begin + static_cast<std::size_t>(config.dense_filters_per_pass));
    for (std::size_t i = begin; i < end; ++i) {
      pass.filter_ids.push_back(static_cast<int>(i));
    }
    place_pass(pass, rows_used, config);

    for (int t = 0; t < pass.tiles; ++t) {
      int row = pass.row_begin + t;
      int base = t * layer.compartments;
      int active = std::min(layer.compartments, reduction - base);
      for (std::size_t s = 0; s < pass.filter_ids.size(); ++s) {
        const auto& filter = filters[static_cast<std::size_t>(pass.filter_ids[s])];
        for (int c = 0; c < active; ++c) {
          auto byte = static_cast<std::uint8_t>(
              filter.weights[static_cast<std::size_t>(base + c)]);
          for (int b = 0; b < 8; ++b) {
            auto& cell = layer.at(pass.macro, c, row, static_cast<int>(s) * 8 + b);
            cell.enabled = ((byte >> b) & 1) != 0;
            cell.position = static_cast<std::uint8_t>(b % 2);
            cell.sign = (b == 7) ? -1 : +1;
            cell.index = static_cast<std::uint8_t>(b / 2);
            cell.owner_slot = static_cast<std::int16_t>(s);
          }
        }
      }
    }
    append_row_schedule(layer, pass);
    layer.passes.push_back(std::move(pass));
  }
  check_storage_budgets(layer, config, "map_layer_dense");
  return layer;
}

std::vector<MetadataRecord> emit_metadata(const CompiledLayer& layer) {
  std::vector<MetadataRecord> records;
  if (layer.mode != SimMode::DbPim) {
    return records;
  }
  for (const auto& pass : layer.passes) {
    for (int t = 0; t < pass.tiles; ++t) {
      int row = pass.row_begin + t;
      for (int c = 0; c < layer.compartments; ++c) {
        for (int dbmu = 0; dbmu < layer.dbmus; ++dbmu) {
          const auto& cell = layer.at(pass.macro, c, row, dbmu);
          if (!cell.enabled) {
            continue;
          }
          MetadataRecord record;
          record.macro = pass.macro;
          record.compartment = c;
          record.row = row;
          record.dbmu = dbmu;
          record.sign_bit = cell.sign < 0 ? 1 : 0;
          record.index = cell.index;
          record.position = cell.position;
          record.owner_filter =
              pass.filter_ids[static_cast<std::size_t>(dbmu / pass.slots_per_filter)];
          records.push_back(record);
        }
      }
    }
  }
  return records;
}

InstructionStream emit_instructions(const CompiledLayer& layer) {
  InstructionStream stream;
  for (const auto& pass : layer.passes) {
    Instruction load;
    load.op = OpKind::LoadWeights;
    load.pass_id = pass.pass_id;
    load.macro = pass.macro;
    load.row = pass.row_begin;
    load.row_end = pass.row_begin + pass.tiles;
    stream.ops.push_back(load);
    for (int t = 0; t < pass.tiles; ++t) {
      for (int column = 7; column >= 0; --column) {
        Instruction compute;
        compute.op = OpKind::Compute;
        compute.pass_id = pass.pass_id;
        compute.macro = pass.macro;
        compute.row = pass.row_begin + t;
        compute.tile = t;
        compute.input_base = t * layer.compartments;
        compute.column = column;
        stream.ops.push_back(compute);
      }
      Instruction acc;
      acc.op = OpKind::Accumulate;
      acc.pass_id = pass.pass_id;
      acc.macro = pass.macro;
      acc.tile = t;
      stream.ops.push_back(acc);
    }
    Instruction wb;
    wb.op = OpKind::WriteBack;
    wb.pass_id = pass.pass_id;
    wb.macro = pass.macro;
    stream.ops.push_back(wb);
  }
  return stream;
}

std::vector<std::vector<std::int64_t>> decode_weights(const CompiledLayer& layer) {
  std::vector<std::vector<std::int64_t>> weights(
      static_cast<std::size_t>(layer.num_filters),
      std::vector<std::int64_t>(static_cast<std::size_t>(layer.reduction), 0));
  for (const auto& pass : layer.passes) {
    for (int t = 0; t < pass.tiles; ++t) {
      int row = pass.row_begin + t;
      int base = t * layer.compartments;
      int active = std::min(layer.compartments, layer.reduction - base);
      for (int c = 0; c < active; ++c) {
        for (std::size_t s = 0; s < pass.filter_ids.size(); ++s) {
          auto filter = static_cast<std::size_t>(pass.filter_ids[s]);
          for (int j = 0; j < pass.slots_per_filter; ++j) {
            const auto& cell =
                layer.at(pass.macro, c, row,
                         static_cast<int>(s) * pass.slots_per_filter + j);
            if (!cell.enabled) {
              continue;
            }
            weights[filter][static_cast<std::size_t>(base + c)] +=
                std::int64_t{cell.sign} << (2 * cell.index + cell.position);
          }
        }
      }
    }
  }
  return weights;
}

}  // namespace dbpim

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbpim/config.hpp"
#include "dbpim/fta.hpp"

namespace dbpim {

enum class SimMode : std::uint8_t {
  DbPim,
  DenseBaseline,
};

// One storage cell of the weight array. A cell stores a single signed digit:
// its numeric contribution for input bit `b` is sign * b * 2^(2*index +
// position). In the dense baseline image the same cell type holds one plain
// weight bit (bit k is stored as index k/2, position k%2, and bit 7 carries
// sign -1, so the enabled cells of a weight sum to its two's-complement
// value).
//
// owner_slot is the filter slot the cell is allocated to within its pass, or
// -1 when the cell is unused. An allocated cell may be disabled (stored
// zero); utilization counts allocated cells as participating.
struct DbmuSlot {
  bool enabled = false;
  std::uint8_t position = 0;
  std::int8_t sign = +1;
  std::uint8_t index = 0;
  std::int16_t owner_slot = -1;
};

// One pass: a set of filters resident together, one row per input tile.
struct PassPlan {
  int pass_id = 0;
  int macro = 0;
  int phi_threshold = 0;   // digits per weight; 8 for the dense baseline
  int slots_per_filter = 0;
  int row_begin = 0;
  int tiles = 0;
  std::vector<int> filter_ids;  // global indices, filter-slot order
};

struct RowActivation {
  int pass_id = 0;
  int macro = 0;
  int row = 0;
  int tile = 0;
  int input_base = 0;  // first input element index of the tile
};

enum class OpKind : std::uint8_t {
  LoadWeights,
  Compute,
  Accumulate,
  WriteBack,
};

// Fixed-size instruction word; every field unused by an op is -1. The
// modeled instruction buffer holds 4 bytes per instruction.
struct Instruction {
  OpKind op = OpKind::LoadWeights;
  int pass_id = -1;
  int macro = -1;
  int row = -1;
  int row_end = -1;  // LoadWeights covers [row, row_end)
  int tile = -1;
  int input_base = -1;
  int column = -1;  // Compute: nominal input bit column, issued 7 down to 0
};

struct InstructionStream {
  std::vector<Instruction> ops;
};

inline constexpr std::size_t kInstructionBytes = 4;
inline constexpr std::size_t kMetadataRecordBytes = 2;

// A layer mapped onto the macro array: pass plans, the row activation
// schedule, and the full cell image of every macro.
struct CompiledLayer {
  SimMode mode = SimMode::DbPim;
  int num_filters = 0;
  int reduction = 0;

  // Geometry snapshot of the config the layer was mapped under.
  int num_macros = 0;
  int compartments = 0;
  int dbmus = 0;
  int rows = 0;

  std::vector<int> phi_threshold_by_filter;
  std::vector<int> skipped_zero_filters;  // all-zero filters, no pass membership
  std::vector<PassPlan> passes;
  std::vector<RowActivation> row_schedule;

  // images[macro] is indexed by slot_index(compartment, row, dbmu).
  std::vector<std::vector<DbmuSlot>> images;

  std::size_t slot_index(int compartment, int row, int dbmu) const {
    return (static_cast<std::size_t>(compartment) * static_cast<std::size_t>(rows) +
            static_cast<std::size_t>(row)) *
               static_cast<std::size_t>(dbmus) +
           static_cast<std::size_t>(dbmu);
  }
  const DbmuSlot& at(int macro, int compartment, int row, int dbmu) const {
    return images[static_cast<std::size_t>(macro)][slot_index(compartment, row, dbmu)];
  }
  DbmuSlot& at(int macro, int compartment, int row, int dbmu) {
    return images[static_cast<std::size_t>(macro)][slot_index(compartment, row, dbmu)];
  }
};

// One enabled cell of a compiled image, in deposit order. sign_bit is 0 for
// +1 and 1 for -1.
struct MetadataRecord {
  int macro = 0;
  int compartment = 0;
  int row = 0;
  int dbmu = 0;
  int sign_bit = 0;
  int index = 0;
  int position = 0;
  int owner_filter = 0;
};

// Maps quantized filters onto the macro array. Filters of equal threshold
// are packed together; each pass takes dbmus/threshold filters and
// ceil(reduction/compartments) rows, and passes are placed on macros
// first-fit by row budget. All-zero filters are recorded as skipped. Throws
// ShapeError on inconsistent filter lengths and CapacityError when the
// array cannot hold the layer.
CompiledLayer map_layer(std::span<const ThresholdedFilter> filters,
                        const MacroConfig& config);

// Dense baseline image of the same filters: plain 8-bit weights, one bit
// per cell, dense_filters_per_pass filters per pass, no skipped filters.
CompiledLayer map_layer_dense(std::span<const ThresholdedFilter> filters,
                              const MacroConfig& config);

// Enabled-cell records of a DbPim image in deposit order (pass, tile,
// compartment, cell). The dense baseline carries no digit metadata and
// yields an empty list.
std::vector<MetadataRecord> emit_metadata(const CompiledLayer& layer);

// Deterministic instruction stream: per pass one LoadWeights over its rows,
// then per tile 8 Compute ops (columns 7 down to 0) and an Accumulate, and
// one WriteBack closing the pass.
InstructionStream emit_instructions(const CompiledLayer& layer);

// Reconstructs every filter's weights from the cell image alone (sum of
// enabled-cell contributions per weight). Works for both modes; used to
// check the mapping is lossless.
std::vector<std::vector<std::int64_t>> decode_weights(const CompiledLayer& layer);

}  // namespace dbpim

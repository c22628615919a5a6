#pragma once

#include <cstddef>
#include <cstdint>

#include "dbpim/fta.hpp"
#include "dbpim/ipu.hpp"

namespace dbpim {

// Per-event energy constants in arbitrary units. These are placeholders to
// be calibrated against a real design; the simulator only requires that they
// are non-negative, and reported energies are meaningful as ratios between
// runs using the same constants.
struct EnergyCosts {
  double macro_bit_cycle = 1.0;
  double row_load = 0.1;
  double buffer_read = 0.01;
  double buffer_write = 0.01;
  double postprocess_op = 0.05;
};

// Optional output transform applied between chained layers:
// y = clamp((x * mul) >> shift) into the input domain of the next layer.
// The default is the identity.
struct AffineHook {
  std::int64_t mul = 1;
  int shift = 0;
};

// Modeled macro array geometry and simulation options.
//
// One macro holds compartments_per_macro compartments; a compartment holds
// dbmus_per_compartment digit-storage units, each rows_per_dbmu rows deep.
// During one pass a row stores, per compartment, dbmus_per_compartment /
// phi_threshold weights (one weight per filter slot), so a compartment
// serves exactly one input element per row activation.
struct MacroConfig {
  int num_macros = 4;
  int compartments_per_macro = 16;
  int dbmus_per_compartment = 16;
  int rows_per_dbmu = 64;

  // Inputs are analyzed for skippable bit columns in groups of this many
  // elements; must divide compartments_per_macro.
  int input_group_size = 16;

  // Filters processed concurrently per pass by the dense baseline, which
  // stores plain 8-bit weights across 8 units each.
  int dense_filters_per_pass = 2;

  TableMode fta_mode = TableMode::Exact;
  Signedness input_signedness = Signedness::Unsigned8;
  bool enable_input_skipping = true;

  // When set, reported cycle counts include one cycle per row load in
  // addition to macro bit cycles. Off by default so cycle ratios reflect
  // compute alone.
  bool include_weight_load_cycles = false;

  std::uint64_t seed = 1;
  std::size_t max_tensor_elements = std::size_t{1} << 22;

  std::size_t feature_buffer_bytes = 128 * 1024;
  std::size_t instruction_buffer_bytes = 16 * 1024;
  std::size_t weight_buffer_bytes = 32 * 1024;
  std::size_t meta_buffer_bytes = 96 * 1024;

  EnergyCosts energy;
  AffineHook affine;

  // Throws ArgumentError on an inconsistent configuration.
  void validate() const;
};

}  // namespace dbpim

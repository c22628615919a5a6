#include "dbpim/config.hpp"

#include <string>

#include "dbpim/errors.hpp"

namespace dbpim {

void MacroConfig::validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) {
      throw ArgumentError("config: " + message);
    }
  };
  require(num_macros >= 1, "num_macros must be >= 1");
  require(compartments_per_macro >= 1, "compartments_per_macro must be >= 1");
  require(dbmus_per_compartment >= 2, "dbmus_per_compartment must be >= 2");
  require(dbmus_per_compartment % 2 == 0,
          "dbmus_per_compartment must be even so threshold-2 slot groups tile it");
  require(rows_per_dbmu >= 1, "rows_per_dbmu must be >= 1");
  require(input_group_size >= 1, "input_group_size must be >= 1");
  require(compartments_per_macro % input_group_size == 0,
          "input_group_size must divide compartments_per_macro");
  require(dense_filters_per_pass >= 1, "dense_filters_per_pass must be >= 1");
  require(dense_filters_per_pass * 8 <= dbmus_per_compartment,
          "dense_filters_per_pass * 8 must fit in dbmus_per_compartment");
  require(max_tensor_elements >= 1, "max_tensor_elements must be >= 1");
  require(feature_buffer_bytes >= 1, "feature_buffer_bytes must be >= 1");
  require(instruction_buffer_bytes >= 1, "instruction_buffer_bytes must be >= 1");
  require(weight_buffer_bytes >= 1, "weight_buffer_bytes must be >= 1");
  require(meta_buffer_bytes >= 1, "meta_buffer_bytes must be >= 1");
  require(energy.macro_bit_cycle >= 0 && energy.row_load >= 0 &&
              energy.buffer_read >= 0 && energy.buffer_write >= 0 &&
              energy.postprocess_op >= 0,
          "energy constants must be non-negative");
  require(affine.shift >= 0 && affine.shift <= 62,
          "affine.shift must lie in [0, 62]");
}

}  // namespace dbpim

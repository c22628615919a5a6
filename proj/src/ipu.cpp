#include "dbpim/ipu.hpp"

#include <string>

#include "dbpim/errors.hpp"

namespace dbpim {

std::uint8_t byte_repr(int value, Signedness signedness) {
  if (signedness == Signedness::Unsigned8) {
    if (value < 0 || value > 255) {
      throw RangeError("byte_repr: value " + std::to_string(value) +
                       " outside [0, 255]");
    }
    return static_cast<std::uint8_t>(value);
  }
  if (value < -128 || value > 127) {
    throw RangeError("byte_repr: value " + std::to_string(value) +
                     " outside [-128, 127]");
  }
  return static_cast<std::uint8_t>(static_cast<std::int8_t>(value));
}

std::int64_t column_weight(int column, Signedness signedness) {
  if (column < 0 || column > 7) {
    throw ArgumentError("column_weight: column " + std::to_string(column) +
                        " outside [0, 7]");
  }
  if (signedness == Signedness::Signed8 && column == 7) {
    return -128;
  }
  return std::int64_t{1} << column;
}

BitColumnMask analyze_group(const InputGroup& group) {
  BitColumnMask mask{};
  mask.signedness = group.signedness;
  std::uint8_t any = 0;
  for (int value : group.values) {
    any |= byte_repr(value, group.signedness);
  }
  for (int b = 0; b < 8; ++b) {
    mask.zero_column[static_cast<std::size_t>(b)] = ((any >> b) & 1) == 0;
  }
  for (int b = 7; b >= 0; --b) {
    if (!mask.zero_column[static_cast<std::size_t>(b)]) {
      mask.surviving_columns.push_back(b);
    }
  }
  return mask;
}

std::vector<ColumnStep> bit_serial_schedule(const BitColumnMask& mask) {
  std::vector<ColumnStep> steps;
  steps.reserve(mask.surviving_columns.size());
  for (int column : mask.surviving_columns) {
    steps.push_back({column, column_weight(column, mask.signedness)});
  }
  return steps;
}

}  // namespace dbpim

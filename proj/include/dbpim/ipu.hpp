#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace dbpim {

enum class Signedness : std::uint8_t {
  Unsigned8,  // values in [0, 255]
  Signed8,    // values in [-128, 127], two's-complement byte image
};

// One group of input elements presented to the macro together. The input
// processing unit inspects the raw byte images of the group.
struct InputGroup {
  std::vector<int> values;
  Signedness signedness = Signedness::Unsigned8;
};

// Per-bit-column zero flags for one group. zero_column[b] is true iff bit b
// is zero in every byte of the group; such a column contributes nothing to
// any dot product and its macro cycle can be skipped. surviving_columns
// lists the remaining columns most significant first, which is the order
// the bit-serial schedule issues them.
struct BitColumnMask {
  std::array<bool, 8> zero_column{};
  std::vector<int> surviving_columns;
  Signedness signedness = Signedness::Unsigned8;
};

// One issued bit cycle: the column index and the weight the accumulator
// applies to that column's partial sum. For Signed8, column 7 carries the
// sign bit and weighs -128; all other columns weigh +2^b.
struct ColumnStep {
  int column = 0;
  std::int64_t shift_weight = 0;
};

// Two's-complement byte image of a value. Throws RangeError when the value
// does not fit the stated signedness.
std::uint8_t byte_repr(int value, Signedness signedness);

std::int64_t column_weight(int column, Signedness signedness);

BitColumnMask analyze_group(const InputGroup& group);

// Bit-serial schedule for one group: surviving columns only, MSB first.
std::vector<ColumnStep> bit_serial_schedule(const BitColumnMask& mask);

}  // namespace dbpim

#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace dbpim {

// Fixed word width of the signed-digit encoding. Values are 8-bit integers,
// so 8 digit positions always suffice (the canonical form of any value in
// [-128, 127] fits without a carry-out).
inline constexpr int kCsdDigits = 8;

// Canonical signed-digit word. digits[i] is the coefficient of 2^i and is
// one of {-1, 0, +1}. The canonical (non-adjacent) form additionally has no
// two adjacent non-zero digits; every 8-bit integer has exactly one such
// form, and it minimizes the number of non-zero digits over all signed-digit
// representations of the value.
struct CsdWord {
  std::array<std::int8_t, kCsdDigits> digits{};

  friend bool operator==(const CsdWord&, const CsdWord&) = default;
};

enum class BlockKind : std::uint8_t {
  // Both digits of the block are zero; the block stores nothing.
  ZeroPattern,
  // Exactly one digit of the block is non-zero.
  CompPattern,
};

// One two-bit slice of a CsdWord. Block k covers digit positions 2k and
// 2k+1; position_in_block selects which of the two holds the non-zero digit
// of a CompPattern block. The digit's magnitude is 2^(2*index +
// position_in_block) and its sign is `sign`.
struct DyadicBlock {
  BlockKind kind = BlockKind::ZeroPattern;
  std::uint8_t position_in_block = 0;  // 0 or 1; meaningful for CompPattern
  std::int8_t sign = +1;               // -1 or +1; meaningful for CompPattern
  std::uint8_t index = 0;              // block number, 0 (LSB pair) .. 3

  friend bool operator==(const DyadicBlock&, const DyadicBlock&) = default;
};

// All four blocks of one word plus the non-zero digit count (phi).
// Non-adjacency guarantees each block holds at most one non-zero digit, so
// the decomposition is always representable and phi is in [0, 4].
struct DyadicBlockSet {
  std::array<DyadicBlock, 4> blocks{};
  int phi = 0;

  friend bool operator==(const DyadicBlockSet&, const DyadicBlockSet&) = default;
};

// Canonical signed-digit form of an 8-bit value. Throws RangeError for
// values outside [-128, 127].
CsdWord to_csd(int value);

// Decodes any signed-digit word (canonical or not).
int from_csd(const CsdWord& word);

int count_nonzeros(const CsdWord& word);

// True iff every digit is in {-1, 0, +1} and no two adjacent digits are
// both non-zero.
bool is_valid_csd(const CsdWord& word);

// Splits a valid word into its four dyadic blocks. Throws ArgumentError if
// the word is not a valid (non-adjacent) signed-digit word.
DyadicBlockSet to_dyadic_blocks(const CsdWord& word);

// Inverse of to_dyadic_blocks.
CsdWord word_from_blocks(const DyadicBlockSet& set);

// Human-readable rendering, most significant digit first, '-' marking a -1
// digit and '_' separating the two nibbles, e.g. 125 -> "1000_0-101".
std::string to_string(const CsdWord& word);

}  // namespace dbpim

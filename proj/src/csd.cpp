#include "dbpim/csd.hpp"

#include "dbpim/errors.hpp"

namespace dbpim {

CsdWord to_csd(int value) {
  if (value < -128 || value > 127) {
    throw RangeError("to_csd: value " + std::to_string(value) +
                     " outside [-128, 127]");
  }
  CsdWord word{};
  int v = value;
  for (int i = 0; i < kCsdDigits && v != 0; ++i) {
    if (v & 1) {
      // Pick the digit that leaves (v - d) divisible by 4, which forces the
      // next digit to zero and yields the non-adjacent form.
      int mod4 = ((v % 4) + 4) % 4;
      int d = (mod4 == 1) ? 1 : -1;
      word.digits[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(d);
      v = (v - d) / 2;
    } else {
      v /= 2;
    }
  }
  return word;
}

int from_csd(const CsdWord& word) {
  int sum = 0;
  for (int i = 0; i < kCsdDigits; ++i) {
    sum += static_cast<int>(word.digits[static_cast<std::size_t>(i)]) << i;
  }
  return sum;
}

int count_nonzeros(const CsdWord& word) {
  int n = 0;
  for (auto d : word.digits) {
    n += (d != 0);
  }
  return n;
}

bool is_valid_csd(const CsdWord& word) {
  for (int i = 0; i < kCsdDigits; ++i) {
    auto d = word.digits[static_cast<std::size_t>(i)];
    if (d < -1 || d > 1) {
      return false;
    }
    if (i > 0 && d != 0 && word.digits[static_cast<std::size_t>(i - 1)] != 0) {
      return false;
    }
  }
  return true;
}

DyadicBlockSet to_dyadic_blocks(const CsdWord& word) {
  if (!is_valid_csd(word)) {
    throw ArgumentError("to_dyadic_blocks: word is not a valid signed-digit word");
  }
  DyadicBlockSet set{};
  for (int k = 0; k < 4; ++k) {
    auto lo = word.digits[static_cast<std::size_t>(2 * k)];
    auto hi = word.digits[static_cast<std::size_t>(2 * k + 1)];
    DyadicBlock block{};
    block.index = static_cast<std::uint8_t>(k);
    if (lo == 0 && hi == 0) {
      block.kind = BlockKind::ZeroPattern;
    } else {
      block.kind = BlockKind::CompPattern;
      block.position_in_block = (hi != 0) ? 1 : 0;
      block.sign = (hi != 0) ? hi : lo;
      set.phi += 1;
    }
    set.blocks[static_cast<std::size_t>(k)] = block;
  }
  return set;
}

CsdWord word_from_blocks(const DyadicBlockSet& set) {
  CsdWord word{};
  for (const auto& block : set.blocks) {
    if (block.kind != BlockKind::CompPattern) {
      continue;
    }
    auto pos = static_cast<std::size_t>(2 * block.index + block.position_in_block);
    word.digits[pos] = block.sign;
  }
  return word;
}

std::string to_string(const CsdWord& word) {
  std::string out;
  for (int i = kCsdDigits - 1; i >= 0; --i) {
    auto d = word.digits[static_cast<std::size_t>(i)];
    if (d < 0) {
      out += '-';
    }
    out += (d != 0) ? '1' : '0';
    if (i == 4) {
      out += '_';
    }
  }
  return out;
}

}  // namespace dbpim

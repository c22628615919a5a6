#include "dbpim/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "dbpim/errors.hpp"

namespace dbpim::oracle {

namespace {

int decode(const std::array<std::int8_t, 8>& digits) {
  int v = 0;
  for (int i = 0; i < 8; ++i) {
    v += static_cast<int>(digits[static_cast<std::size_t>(i)]) << i;
  }
  return v;
}

// Any 8-digit signed-digit value lies in [-255, 255]; cache minimum counts
// for the whole range once.
constexpr int kSpan = 255;

const std::array<int, 2 * kSpan + 1>& min_count_table() {
  static const std::array<int, 2 * kSpan + 1> table = [] {
    std::array<int, 2 * kSpan + 1> t{};
    t.fill(9);
    std::array<std::int8_t, 8> digits{};
    for (int code = 0; code < 6561; ++code) {
      int c = code;
      int nonzero = 0;
      for (int i = 0; i < 8; ++i) {
        int d = c % 3 - 1;
        c /= 3;
        digits[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(d);
        nonzero += (d != 0);
      }
      int v = decode(digits);
      auto& slot = t[static_cast<std::size_t>(v + kSpan)];
      if (nonzero < slot) {
        slot = nonzero;
      }
    }
    return t;
  }();
  return table;
}

void check_input_domain(int value, Signedness signedness) {
  if (signedness == Signedness::Unsigned8) {
    if (value < 0 || value > 255) {
      throw RangeError("dot_reference: input " + std::to_string(value) +
                       " outside [0, 255]");
    }
  } else if (value < -128 || value > 127) {
    throw RangeError("dot_reference: input " + std::to_string(value) +
                     " outside [-128, 127]");
  }
}

}  // namespace

ReferenceResult dot_reference(const std::vector<std::vector<int>>& weight_rows,
                              std::span<const int> inputs,
                              Signedness signedness) {
  for (int v : inputs) {
    check_input_domain(v, signedness);
  }
  ReferenceResult result;
  result.outputs.reserve(weight_rows.size());
  for (const auto& row : weight_rows) {
    if (row.size() != inputs.size()) {
      throw ShapeError("dot_reference: weight row length " +
                       std::to_string(row.size()) + " != input length " +
                       std::to_string(inputs.size()));
    }
    std::int64_t forward = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] < -128 || row[i] > 127) {
        throw RangeError("dot_reference: weight " + std::to_string(row[i]) +
                         " outside [-128, 127]");
      }
      forward += std::int64_t{row[i]} * inputs[i];
    }
    std::int64_t backward = 0;
    for (std::size_t i = row.size(); i-- > 0;) {
      backward += std::int64_t{row[i]} * inputs[i];
    }
    if (forward != backward) {
      throw Error("dot_reference: summation order changed the result");
    }
    result.outputs.push_back(forward);
  }
  return result;
}

std::vector<std::array<std::int8_t, 8>> csd_enumerate(int value) {
  std::vector<std::array<std::int8_t, 8>> reps;
  std::array<std::int8_t, 8> digits{};
  for (int code = 0; code < 6561; ++code) {
    int c = code;
    for (int i = 0; i < 8; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(c % 3 - 1);
      c /= 3;
    }
    if (decode(digits) == value) {
      reps.push_back(digits);
    }
  }
  return reps;
}

bool is_nonadjacent(const std::array<std::int8_t, 8>& digits) {
  for (int i = 1; i < 8; ++i) {
    if (digits[static_cast<std::size_t>(i)] != 0 &&
        digits[static_cast<std::size_t>(i - 1)] != 0) {
      return false;
    }
  }
  return true;
}

int min_nonzero_count(int value) {
  if (value < -kSpan || value > kSpan) {
    throw RangeError("min_nonzero_count: value " + std::to_string(value) +
                     " outside [-255, 255]");
  }
  int count = min_count_table()[static_cast<std::size_t>(value + kSpan)];
  if (count > 8) {
    throw RangeError("min_nonzero_count: value " + std::to_string(value) +
                     " has no 8-digit representation");
  }
  return count;
}

int nearest_reference(int w, const std::function<bool(int)>& phi_ok) {
  bool found = false;
  int best = 0;
  for (int t = -128; t <= 127; ++t) {
    if (!phi_ok(min_nonzero_count(t))) {
      continue;
    }
    if (!found) {
      found = true;
      best = t;
      continue;
    }
    int dist = std::abs(t - w);
    int best_dist = std::abs(best - w);
    bool better = dist < best_dist ||
                  (dist == best_dist && std::abs(t) < std::abs(best)) ||
                  (dist == best_dist && std::abs(t) == std::abs(best) && t > best);
    if (better) {
      best = t;
    }
  }
  if (!found) {
    throw ArgumentError("nearest_reference: no representable value satisfies the predicate");
  }
  return best;
}

int nearest_reference(int w, int phi_threshold, bool at_most) {
  return nearest_reference(w, [=](int phi) {
    return at_most ? phi <= phi_threshold : phi == phi_threshold;
  });
}

}  // namespace dbpim::oracle

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dbpim/csd.hpp"

namespace dbpim {

// Membership rule of a query table: Exact tables hold values whose non-zero
// digit count equals the threshold, AtMost tables hold values whose count is
// at most the threshold. Exact tables make every stored weight occupy all of
// its allocated digit slots; AtMost tables trade that for lower
// approximation error.
enum class TableMode : std::uint8_t {
  Exact,
  AtMost,
};

struct Filter {
  int filter_id = 0;
  std::vector<std::int8_t> weights;
};

// All 8-bit values admissible under (phi_threshold, mode), ascending.
struct QueryTable {
  int phi_threshold = 0;
  TableMode mode = TableMode::Exact;
  std::vector<std::int8_t> entries;
};

// A filter after threshold selection and weight approximation. weights are
// the approximated values; per_weight_blocks caches their dyadic block
// decompositions for the compiler.
struct ThresholdedFilter {
  int filter_id = 0;
  int phi_threshold = 0;
  std::vector<std::int8_t> weights;
  std::vector<DyadicBlockSet> per_weight_blocks;
};

// Non-zero digit count of each weight's canonical form, in order.
std::vector<int> phi_profile(const Filter& filter);

// Per-filter threshold from a digit-count profile. The most frequent count m
// (smallest on ties) drives the choice: all-zero filters get 0, m == 0 gets
// 1, m in [1, 2] gets m, m > 2 is clamped to 2. Profile entries must lie in
// [0, 4]; the profile must be non-empty.
int select_threshold(std::span<const int> profile);

// Builds the admissible-value table for a threshold in [0, 2].
QueryTable build_query_table(int phi_threshold, TableMode mode);

// Closest table entry to w. Ties on distance prefer the entry of smaller
// magnitude, then the positive one. w must lie in [-128, 127].
std::int8_t approximate_weight(int w, const QueryTable& table);

// Full pipeline over a layer's filters: profile, threshold, approximate,
// decompose. Weight order and filter order are preserved.
std::vector<ThresholdedFilter> fta_quantize(std::span<const Filter> filters,
                                            TableMode mode);

}  // namespace dbpim

// Acceptance gate: one line per criterion, process exit code = number of
// failed criteria. Each criterion is independent, uses its own fixed seed,
// and checks library behavior against independently computed expectations.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dbpim/compiler.hpp"
#include "dbpim/config.hpp"
#include "dbpim/csd.hpp"
#include "dbpim/fta.hpp"
#include "dbpim/ipu.hpp"
#include "dbpim/macro_sim.hpp"
#include "dbpim/metrics.hpp"
#include "dbpim/oracle.hpp"
#include "dbpim/pipeline.hpp"

using namespace dbpim;

namespace {

// Pinned tolerances. Everything not listed here is compared exactly
// (integer equality or identical doubles).
constexpr double kRatioTolerance = 1e-9;     // cycle-ratio arithmetic
constexpr double kMixtureTolerance = 0.01;   // predicted vs simulated mixture
constexpr double kDenseUtilizationCeiling = 0.5;  // uniform random weights

// Runtime budgets, seconds. A criterion that passes its checks but blows
// its budget fails.
constexpr double kCsdBudget = 1.0;
constexpr double kFtaBudget = 10.0;
constexpr double kMappingBudget = 60.0;
constexpr double kSimulatorBudget = 60.0;
constexpr double kGoldenBudget = 5.0;
constexpr double kUtilizationBudget = 30.0;
constexpr double kSpeedupBudget = 30.0;
constexpr double kIpuBudget = 30.0;

int rand_int(std::mt19937_64& rng, int lo, int hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::vector<ThresholdedFilter> quantize_rows(const std::vector<std::vector<int>>& rows,
                                             TableMode mode) {
  std::vector<Filter> filters;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Filter f;
    f.filter_id = static_cast<int>(i);
    for (int w : rows[i]) {
      f.weights.push_back(static_cast<std::int8_t>(w));
    }
    filters.push_back(std::move(f));
  }
  return fta_quantize(filters, mode);
}

std::vector<std::vector<int>> random_rows(std::mt19937_64& rng, int filters,
                                          int reduction, int style) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(filters));
  for (auto& row : rows) {
    for (int r = 0; r < reduction; ++r) {
      int value = 0;
      switch (style) {
        case 0: value = rand_int(rng, -128, 127); break;
        case 1: value = (rng() & 1) ? 0 : rand_int(rng, -128, 127); break;
        case 2: value = rand_int(rng, -8, 8); break;
        default:
          value = (rng() & 1) ? rand_int(rng, 96, 127) : rand_int(rng, -128, -96);
          break;
      }
      row.push_back(value);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// 1. Signed-digit codec, exhaustively over all 256 values.

std::string check_csd_codec() {
  for (int v = -128; v <= 127; ++v) {
    CsdWord word = to_csd(v);
    if (from_csd(word) != v) {
      return "round trip broke at " + std::to_string(v);
    }
    if (!is_valid_csd(word)) {
      return "encoding of " + std::to_string(v) + " has adjacent non-zero digits";
    }
    int minimal = oracle::min_nonzero_count(v);
    if (count_nonzeros(word) != minimal) {
      return "encoding of " + std::to_string(v) + " uses " +
             std::to_string(count_nonzeros(word)) + " non-zero digits, minimum is " +
             std::to_string(minimal);
    }
    // Uniqueness: the brute-force enumeration of all signed-digit words for v
    // must contain exactly one non-adjacent word, and it must be this one.
    int nonadjacent = 0;
    bool found = false;
    for (const auto& digits : oracle::csd_enumerate(v)) {
      if (oracle::is_nonadjacent(digits)) {
        nonadjacent += 1;
        found = found || digits == word.digits;
      }
    }
    if (nonadjacent != 1 || !found) {
      return "value " + std::to_string(v) + " has " + std::to_string(nonadjacent) +
             " non-adjacent forms";
    }
    DyadicBlockSet set = to_dyadic_blocks(word);
    if (set.phi != minimal || from_csd(word_from_blocks(set)) != v) {
      return "block decomposition of " + std::to_string(v) + " is not faithful";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 2. Threshold selection and nearest-value approximation on random filters.

int independent_threshold(const std::vector<int>& weights) {
  std::array<int, 5> freq{};
  bool all_zero = true;
  for (int w : weights) {
    freq[static_cast<std::size_t>(oracle::min_nonzero_count(w))] += 1;
    all_zero = all_zero && w == 0;
  }
  if (all_zero) {
    return 0;
  }
  int mode_count = 0;
  int best = -1;
  for (int phi = 0; phi <= 4; ++phi) {
    if (freq[static_cast<std::size_t>(phi)] > best) {
      best = freq[static_cast<std::size_t>(phi)];
      mode_count = phi;
    }
  }
  if (mode_count == 0) {
    return 1;
  }
  return std::min(mode_count, 2);
}

std::string check_fta_laws() {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 10000; ++n) {
    int reduction = rand_int(rng, 1, 64);
    auto rows = random_rows(rng, 1, reduction, n % 4);
    TableMode mode = (n & 1) ? TableMode::AtMost : TableMode::Exact;
    auto quantized = quantize_rows(rows, mode);
    const auto& filter = quantized[0];

    int expected_th = independent_threshold(rows[0]);
    if (filter.phi_threshold != expected_th) {
      return "filter " + std::to_string(n) + ": threshold " +
             std::to_string(filter.phi_threshold) + ", independent rule says " +
             std::to_string(expected_th);
    }
    for (int r = 0; r < reduction; ++r) {
      int original = rows[0][static_cast<std::size_t>(r)];
      int approx = filter.weights[static_cast<std::size_t>(r)];
      if (expected_th == 0) {
        if (approx != 0) {
          return "filter " + std::to_string(n) + ": zero threshold kept weight " +
                 std::to_string(approx);
        }
        continue;
      }
      int best = oracle::nearest_reference(original, expected_th,
                                           mode == TableMode::AtMost);
      if (approx != best) {
        return "filter " + std::to_string(n) + " weight " + std::to_string(original) +
               ": approximated to " + std::to_string(approx) + ", oracle argmin is " +
               std::to_string(best);
      }
      int phi = oracle::min_nonzero_count(approx);
      if (mode == TableMode::Exact && phi != expected_th) {
        return "exact mode stored a weight with " + std::to_string(phi) +
               " digits under threshold " + std::to_string(expected_th);
      }
      if (mode == TableMode::AtMost && phi > expected_th) {
        return "at-most mode stored a weight with " + std::to_string(phi) +
               " digits over threshold " + std::to_string(expected_th);
      }
      if (filter.per_weight_blocks[static_cast<std::size_t>(r)].phi != phi) {
        return "cached block count disagrees with the stored weight";
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 3. Lossless mapping: decoding a compiled image reproduces every weight.

std::string check_mapping_lossless() {
  std::mt19937_64 rng(77);
  MacroConfig config;
  for (int n = 0; n < 1000; ++n) {
    int filters = rand_int(rng, 1, 20);
    int reduction = rand_int(rng, 1, 48);
    auto rows = random_rows(rng, filters, reduction, n % 4);
    TableMode mode = (n & 1) ? TableMode::AtMost : TableMode::Exact;
    auto quantized = quantize_rows(rows, mode);

    std::vector<std::vector<std::int64_t>> expected(
        static_cast<std::size_t>(filters));
    for (int f = 0; f < filters; ++f) {
      for (auto w : quantized[static_cast<std::size_t>(f)].weights) {
        expected[static_cast<std::size_t>(f)].push_back(w);
      }
    }

    auto db = map_layer(quantized, config);
    if (decode_weights(db) != expected) {
      return "case " + std::to_string(n) + ": packed image decodes incorrectly";
    }
    auto dense = map_layer_dense(quantized, config);
    if (decode_weights(dense) != expected) {
      return "case " + std::to_string(n) + ": dense image decodes incorrectly";
    }

    std::uint64_t phi_sum = 0;
    for (const auto& f : quantized) {
      for (const auto& set : f.per_weight_blocks) {
        phi_sum += static_cast<std::uint64_t>(set.phi);
      }
    }
    auto records = emit_metadata(db);
    if (records.size() != phi_sum) {
      return "case " + std::to_string(n) + ": " + std::to_string(records.size()) +
             " metadata records for " + std::to_string(phi_sum) + " digits";
    }
    if (records.size() * kMetadataRecordBytes > config.meta_buffer_bytes) {
      return "case " + std::to_string(n) + ": metadata exceeds its buffer";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 4. Simulator equals the plain integer reference, both modes.

std::string check_simulator_reference() {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 1000; ++n) {
    MacroConfig cfg;
    cfg.num_macros = (rng() & 1) ? 2 : 1;
    cfg.compartments_per_macro = (rng() & 1) ? 16 : 8;
    cfg.dbmus_per_compartment = (rng() & 1) ? 16 : 8;
    cfg.input_group_size = (rng() & 1) ? cfg.compartments_per_macro
                                       : cfg.compartments_per_macro / 2;
    cfg.dense_filters_per_pass =
        cfg.dbmus_per_compartment == 16 && (rng() & 1) ? 2 : 1;
    cfg.enable_input_skipping = (rng() & 1) != 0;
    cfg.input_signedness = (rng() & 1) ? Signedness::Signed8 : Signedness::Unsigned8;
    TableMode mode = (rng() & 1) ? TableMode::AtMost : TableMode::Exact;

    int filters = rand_int(rng, 1, 8);
    int reduction = rand_int(rng, 1, 2 * cfg.compartments_per_macro);
    auto rows = random_rows(rng, filters, reduction, n % 4);
    auto quantized = quantize_rows(rows, mode);

    std::vector<int> inputs;
    bool zero_heavy = (rng() & 1) != 0;
    int lo = cfg.input_signedness == Signedness::Signed8 ? -128 : 0;
    int hi = cfg.input_signedness == Signedness::Signed8 ? 127 : 255;
    for (int r = 0; r < reduction; ++r) {
      int v = rand_int(rng, lo, hi);
      if (zero_heavy && (rng() & 1)) {
        v = 0;
      }
      inputs.push_back(v);
    }

    std::vector<std::vector<int>> matrix;
    for (const auto& f : quantized) {
      matrix.emplace_back(f.weights.begin(), f.weights.end());
    }
    auto reference =
        oracle::dot_reference(matrix, inputs, cfg.input_signedness).outputs;

    auto db = run_layer(map_layer(quantized, cfg), inputs, cfg, SimMode::DbPim);
    auto dense = run_layer(map_layer_dense(quantized, cfg), inputs, cfg,
                           SimMode::DenseBaseline);
    for (std::size_t f = 0; f < reference.size(); ++f) {
      if (db.outputs[f] != reference[f]) {
        return "case " + std::to_string(n) + ": packed output " +
               std::to_string(db.outputs[f]) + " != reference " +
               std::to_string(reference[f]) + " at filter " + std::to_string(f);
      }
      if (dense.outputs[f] != reference[f]) {
        return "case " + std::to_string(n) + ": dense output " +
               std::to_string(dense.outputs[f]) + " != reference " +
               std::to_string(reference[f]) + " at filter " + std::to_string(f);
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 5. Worked two-weight example: 16 and -128 on unit inputs sum to -112.

std::string check_worked_example() {
  std::vector<std::int64_t> terms = {16, -128};
  if (csd_adder_tree(terms) != -112) {
    return "adder tree gave " + std::to_string(csd_adder_tree(terms));
  }
  // The same sum as a 9-bit two's-complement pattern: 1_1001_0000.
  if (((0x190 ^ 0x100) - 0x100) != -112 ||
      (static_cast<int>(static_cast<std::uint16_t>(-112)) & 0x1FF) != 0x190) {
    return "9-bit two's-complement identity does not hold";
  }

  auto quantized = quantize_rows({{16, -128}}, TableMode::Exact);
  if (quantized[0].phi_threshold != 1) {
    return "threshold of the worked filter is not 1";
  }
  MacroConfig config;
  std::vector<int> inputs = {1, 1};
  auto db = run_layer(map_layer(quantized, config), inputs, config, SimMode::DbPim);
  if (db.outputs != std::vector<std::int64_t>{-112}) {
    return "packed run gave " + std::to_string(db.outputs[0]);
  }
  if (db.cycles != 1) {
    return "unit inputs should need exactly one bit cycle, got " +
           std::to_string(db.cycles);
  }
  auto dense = run_layer(map_layer_dense(quantized, config), inputs, config,
                         SimMode::DenseBaseline);
  if (dense.outputs != std::vector<std::int64_t>{-112} || dense.cycles != 8) {
    return "dense run disagrees on the worked example";
  }

  if (to_string(to_csd(125)) != "1000_0-101") {
    return "digit string of 125 is " + to_string(to_csd(125));
  }
  if (to_string(to_csd(16)) != "0001_0000" ||
      to_string(to_csd(-128)) != "-1000_0000") {
    return "digit strings of 16 / -128 are wrong";
  }
  return "";
}

// ---------------------------------------------------------------------------
// 6. Utilization: packed exact layers run at 100%; the dense baseline runs
//    at the stored weights' non-zero-bit fraction.

std::string check_utilization() {
  std::mt19937_64 rng(4242);
  for (int n = 0; n < 50; ++n) {
    int filters = rand_int(rng, 1, 12);
    int reduction = rand_int(rng, 1, 16);
    auto rows = random_rows(rng, filters, reduction, 0);
    auto quantized = quantize_rows(rows, TableMode::Exact);
    MacroConfig config;
    std::vector<int> inputs;
    for (int r = 0; r < reduction; ++r) {
      inputs.push_back(rand_int(rng, 1, 255));
    }

    auto db = run_layer(map_layer(quantized, config), inputs, config, SimMode::DbPim);
    if (db.tallies.total_cells == 0) {
      return "case " + std::to_string(n) + ": no packed cells executed";
    }
    if (db.tallies.effective_cells != db.tallies.total_cells) {
      return "case " + std::to_string(n) + ": exact-mode utilization " +
             std::to_string(db.tallies.effective_cells) + "/" +
             std::to_string(db.tallies.total_cells);
    }
    if (utilization(db.tallies.effective_cells, db.tallies.total_cells).u_act != 1.0) {
      return "case " + std::to_string(n) + ": exact-mode utilization is not 1.0";
    }

    auto dense = run_layer(map_layer_dense(quantized, config), inputs, config,
                           SimMode::DenseBaseline);
    std::uint64_t popcount_sum = 0;
    for (const auto& f : quantized) {
      for (auto w : f.weights) {
        popcount_sum += std::popcount(static_cast<std::uint8_t>(w));
      }
    }
    std::uint64_t weights_count =
        static_cast<std::uint64_t>(filters) * static_cast<std::uint64_t>(reduction);
    if (dense.tallies.effective_cells != 8 * popcount_sum ||
        dense.tallies.total_cells != 64 * weights_count) {
      return "case " + std::to_string(n) + ": dense cell tallies are not the " +
             "stored bit counts";
    }
  }

  // Uniformly random weights keep the dense baseline under the pinned
  // utilization ceiling while the packed layout stays at 100%.
  auto rows = random_rows(rng, 16, 16, 0);
  auto quantized = quantize_rows(rows, TableMode::Exact);
  MacroConfig config;
  std::vector<int> inputs(16, 255);
  auto db = run_layer(map_layer(quantized, config), inputs, config, SimMode::DbPim);
  auto dense = run_layer(map_layer_dense(quantized, config), inputs, config,
                         SimMode::DenseBaseline);
  auto db_util = utilization(db.tallies.effective_cells, db.tallies.total_cells);
  auto dense_util =
      utilization(dense.tallies.effective_cells, dense.tallies.total_cells);
  if (db_util.u_act != 1.0) {
    return "packed utilization on random weights is " + fmt(db_util.u_act);
  }
  if (dense_util.u_act >= kDenseUtilizationCeiling) {
    return "dense utilization on random weights is " + fmt(dense_util.u_act) +
           ", ceiling " + fmt(kDenseUtilizationCeiling);
  }
  return "";
}

// ---------------------------------------------------------------------------
// 7. Cycle-count speedups: 8.0 and 4.0 for uniform thresholds, 8/(8-k)
//    scaling under column skipping, and a predicted two-threshold mixture.

std::string check_speedups() {
  MacroConfig config;

  auto ratio_of = [&](const std::vector<std::vector<int>>& rows,
                      const std::vector<int>& inputs, std::uint64_t* db_cycles,
                      std::uint64_t* dense_cycles) {
    auto quantized = quantize_rows(rows, TableMode::Exact);
    auto db = run_layer(map_layer(quantized, config), inputs, config, SimMode::DbPim);
    auto dense = run_layer(map_layer_dense(quantized, config), inputs, config,
                           SimMode::DenseBaseline);
    if (db_cycles) {
      *db_cycles = db.cycles;
    }
    if (dense_cycles) {
      *dense_cycles = dense.cycles;
    }
    return static_cast<double>(dense.cycles) / static_cast<double>(db.cycles);
  };

  std::vector<int> live(16, 255);
  double r1 = ratio_of(std::vector<std::vector<int>>(16, std::vector<int>(16, 2)),
                       live, nullptr, nullptr);
  if (std::abs(r1 - 8.0) > kRatioTolerance) {
    return "single-digit speedup " + fmt(r1) + " != 8.0";
  }
  double r2 = ratio_of(std::vector<std::vector<int>>(16, std::vector<int>(16, 5)),
                       live, nullptr, nullptr);
  if (std::abs(r2 - 4.0) > kRatioTolerance) {
    return "double-digit speedup " + fmt(r2) + " != 4.0";
  }

  // Two dead bit columns: 6 of 8 cycles remain, speedup scales by 8/6.
  std::vector<int> masked(16, 1);
  masked[0] = 63;
  std::uint64_t db_cycles = 0, dense_cycles = 0;
  double r3 = ratio_of(std::vector<std::vector<int>>(16, std::vector<int>(16, 8)),
                       masked, &db_cycles, &dense_cycles);
  if (db_cycles != 6 || dense_cycles != 64) {
    return "column skipping ran " + std::to_string(db_cycles) + " vs " +
           std::to_string(dense_cycles) + " cycles";
  }
  if (std::abs(r3 - 64.0 / 6.0) > kRatioTolerance) {
    return "masked speedup " + fmt(r3) + " != 64/6";
  }
  if (std::abs(r3 - 8.0 * 8.0 / 6.0) > kRatioTolerance) {
    return "masked speedup does not scale as 8/(8-k)";
  }

  // Mixture of 160 single-digit and 160 double-digit filters. Pass counts
  // predict 240 packed cycles against 1280 dense cycles.
  std::vector<std::vector<int>> mixture;
  for (int f = 0; f < 160; ++f) {
    mixture.push_back(std::vector<int>(16, 2));
  }
  for (int f = 0; f < 160; ++f) {
    mixture.push_back(std::vector<int>(16, 5));
  }
  double r4 = ratio_of(mixture, live, &db_cycles, &dense_cycles);
  if (db_cycles != 240 || dense_cycles != 1280) {
    return "mixture ran " + std::to_string(db_cycles) + " vs " +
           std::to_string(dense_cycles) + " cycles, predicted 240 vs 1280";
  }
  double predicted = 1280.0 / 240.0;
  if (std::abs(r4 - predicted) / predicted > kMixtureTolerance) {
    return "mixture speedup " + fmt(r4) + " is off the prediction " + fmt(predicted);
  }
  return "";
}

// ---------------------------------------------------------------------------
// 8. Input column analysis: values reconstruct from surviving columns, and
//    skipped work equals the independently computed zero-column count.

std::string check_ipu() {
  std::mt19937_64 rng(555);
  for (int n = 0; n < 1000; ++n) {
    InputGroup group;
    group.signedness = (n & 1) ? Signedness::Signed8 : Signedness::Unsigned8;
    int size = rand_int(rng, 1, 16);
    int lo = group.signedness == Signedness::Signed8 ? -128 : 0;
    int hi = group.signedness == Signedness::Signed8 ? 127 : 255;
    for (int i = 0; i < size; ++i) {
      int v = rand_int(rng, lo, hi);
      if ((rng() & 3) == 0) {
        v = 0;
      }
      group.values.push_back(v);
    }
    auto mask = analyze_group(group);
    std::uint8_t any = 0;
    for (int v : group.values) {
      any = static_cast<std::uint8_t>(any | byte_repr(v, group.signedness));
    }
    for (int b = 0; b < 8; ++b) {
      bool zero = ((any >> b) & 1) == 0;
      if (mask.zero_column[static_cast<std::size_t>(b)] != zero) {
        return "group " + std::to_string(n) + ": zero flag of column " +
               std::to_string(b) + " is wrong";
      }
    }
    auto steps = bit_serial_schedule(mask);
    for (int v : group.values) {
      std::uint8_t byte = byte_repr(v, group.signedness);
      std::int64_t rebuilt = 0;
      for (const auto& step : steps) {
        rebuilt += ((byte >> step.column) & 1) * step.shift_weight;
      }
      if (rebuilt != v) {
        return "group " + std::to_string(n) + ": value " + std::to_string(v) +
               " rebuilt as " + std::to_string(rebuilt);
      }
    }
  }

  // Skip accounting on a full layer run, against a from-scratch count of
  // all-zero columns per (tile, group).
  auto rows = random_rows(rng, 16, 32, 0);
  auto quantized = quantize_rows(rows, TableMode::Exact);
  MacroConfig on;
  on.input_group_size = 8;
  MacroConfig off = on;
  off.enable_input_skipping = false;

  std::vector<int> inputs;
  for (int r = 0; r < 32; ++r) {
    inputs.push_back((rng() & 1) ? 0 : rand_int(rng, 0, 255));
  }

  auto layer = map_layer(quantized, on);
  auto run_on = run_layer(layer, inputs, on, SimMode::DbPim);
  auto run_off = run_layer(layer, inputs, off, SimMode::DbPim);
  if (run_on.outputs != run_off.outputs) {
    return "skipping changed the outputs";
  }

  int tiles = (32 + on.compartments_per_macro - 1) / on.compartments_per_macro;
  std::uint64_t zero_columns = 0;
  for (int t = 0; t < tiles; ++t) {
    for (int g = 0; g < on.compartments_per_macro / on.input_group_size; ++g) {
      std::uint8_t any = 0;
      for (int c = 0; c < on.input_group_size; ++c) {
        int idx = t * on.compartments_per_macro + g * on.input_group_size + c;
        if (idx < 32) {
          any = static_cast<std::uint8_t>(
              any | byte_repr(inputs[static_cast<std::size_t>(idx)],
                              Signedness::Unsigned8));
        }
      }
      zero_columns += 8 - static_cast<std::uint64_t>(std::popcount(any));
    }
  }
  std::uint64_t expected_skips = zero_columns * layer.passes.size();
  if (run_on.tallies.skipped_cycles != expected_skips) {
    return "skipped " + std::to_string(run_on.tallies.skipped_cycles) +
           " cycles, independent count is " + std::to_string(expected_skips);
  }
  if (run_off.cycles - run_on.cycles != expected_skips) {
    return "cycle delta " + std::to_string(run_off.cycles - run_on.cycles) +
           " does not match the skipped work";
  }
  return "";
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"signed-digit codec, exhaustive over all 256 values", kCsdBudget,
       check_csd_codec},
      {"threshold selection and approximation laws on 10000 random filters",
       kFtaBudget, check_fta_laws},
      {"lossless weight mapping on 1000 random layers", kMappingBudget,
       check_mapping_lossless},
      {"simulator equals the integer reference on 1000 randomized cases",
       kSimulatorBudget, check_simulator_reference},
      {"worked two-weight example sums to -112 at one cycle", kGoldenBudget,
       check_worked_example},
      {"utilization: packed layers 100%, dense layers at their bit fraction",
       kUtilizationBudget, check_utilization},
      {"cycle speedups: 8.0 / 4.0 / column scaling / mixture prediction",
       kSpeedupBudget, check_speedups},
      {"input column analysis reconstructs values and counts skipped work",
       kIpuBudget, check_ipu},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = criterion.body();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (detail.empty() && seconds > criterion.budget_seconds) {
      detail = "took " + fmt(seconds) + " s, budget " +
               fmt(criterion.budget_seconds) + " s";
    }
    if (detail.empty()) {
      std::cout << "PASS: " << criterion.name << " (" << std::fixed
                << std::setprecision(2) << seconds << " s)\n";
      std::cout.unsetf(std::ios::fixed);
    } else {
      std::cout << "FAIL: " << criterion.name << " -- " << detail << "\n";
      failures += 1;
    }
  }
  if (failures == 0) {
    std::cout << "acceptance: all " << criteria.size() << " criteria hold\n";
  } else {
    std::cout << "acceptance: " << failures << " of " << criteria.size()
              << " criteria failed\n";
  }
  return failures;
}

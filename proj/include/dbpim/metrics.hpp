#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dbpim/config.hpp"
#include "dbpim/macro_sim.hpp"

namespace dbpim {

struct UtilizationRecord {
  std::uint64_t effective_cells = 0;
  std::uint64_t total_cells = 0;
  double u_act = 0.0;
  bool no_cells = false;  // nothing executed; u_act is reported as 0
};

UtilizationRecord utilization(std::uint64_t effective_cells,
                              std::uint64_t total_cells);

// Weighted event-count energy in the model's arbitrary units.
double energy_of(const SimTallies& tallies, const EnergyCosts& costs);

// One layer simulated in one mode.
struct LayerRunReport {
  int layer_index = 0;
  int filters = 0;
  int reduction = 0;
  std::array<int, 3> phi_threshold_histogram{};  // thresholds 0, 1, 2
  std::uint64_t cycles = 0;
  SimTallies tallies;
  UtilizationRecord util;
  double energy = 0.0;
  std::vector<std::int64_t> outputs;
};

struct RunReport {
  SimMode mode = SimMode::DbPim;
  std::vector<LayerRunReport> layers;
  std::uint64_t total_cycles = 0;
  double total_energy = 0.0;
  UtilizationRecord total_util;

  void finalize();  // recomputes the totals from the layers
};

struct LayerComparison {
  int layer_index = 0;
  int filters = 0;
  int reduction = 0;
  std::uint64_t dbpim_cycles = 0;
  std::uint64_t dense_cycles = 0;
  bool speedup_defined = false;
  double speedup = 0.0;
  double dbpim_energy = 0.0;
  double dense_energy = 0.0;
  bool savings_defined = false;
  double energy_savings = 0.0;  // 1 - dbpim/dense
  double dbpim_u_act = 0.0;
  double dense_u_act = 0.0;
};

// Side-by-side comparison of a DbPim run and a dense-baseline run over the
// same layers.
struct SimReport {
  std::vector<LayerComparison> layers;
  std::uint64_t dbpim_cycles = 0;
  std::uint64_t dense_cycles = 0;
  bool speedup_defined = false;
  double speedup = 0.0;  // ratio of total cycles
  double dbpim_energy = 0.0;
  double dense_energy = 0.0;
  bool savings_defined = false;
  double energy_savings = 0.0;
  UtilizationRecord dbpim_util;
  UtilizationRecord dense_util;
};

// Joins two runs of the same layer stack. Energies are recomputed from the
// tallies under `costs`. Throws ArgumentError when the two runs do not
// describe the same layers (mode tags, layer count, shapes) or ShapeError
// when their outputs disagree, since the comparison is only meaningful for
// equivalent computations.
SimReport speedup_and_energy(const RunReport& dbpim_run,
                             const RunReport& dense_run,
                             const EnergyCosts& costs);

}  // namespace dbpim

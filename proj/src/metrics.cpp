#include "dbpim/metrics.hpp"

#include <string>

#include "dbpim/errors.hpp"

namespace dbpim {

UtilizationRecord utilization(std::uint64_t effective_cells,
                              std::uint64_t total_cells) {
  UtilizationRecord record;
  record.effective_cells = effective_cells;
  record.total_cells = total_cells;
  if (total_cells == 0) {
    record.no_cells = true;
    record.u_act = 0.0;
  } else {
    record.u_act =
        static_cast<double>(effective_cells) / static_cast<double>(total_cells);
  }
  return record;
}

double energy_of(const SimTallies& tallies, const EnergyCosts& costs) {
  return costs.macro_bit_cycle * static_cast<double>(tallies.compute_cycles) +
         costs.row_load * static_cast<double>(tallies.row_loads) +
         costs.buffer_read * static_cast<double>(tallies.buffer_reads) +
         costs.buffer_write * static_cast<double>(tallies.buffer_writes) +
         costs.postprocess_op * static_cast<double>(tallies.postprocess_ops);
}

void RunReport::finalize() {
  total_cycles = 0;
  total_energy = 0.0;
  std::uint64_t effective = 0;
  std::uint64_t total = 0;
  for (const auto& layer : layers) {
    total_cycles += layer.cycles;
    total_energy += layer.energy;
    effective += layer.tallies.effective_cells;
    total += layer.tallies.total_cells;
  }
  total_util = utilization(effective, total);
}

SimReport speedup_and_energy(const RunReport& dbpim_run,
                             const RunReport& dense_run,
                             const EnergyCosts& costs) {
  if (dbpim_run.mode != SimMode::DbPim || dense_run.mode != SimMode::DenseBaseline) {
    throw ArgumentError("speedup_and_energy: runs must be one DbPim run and one dense baseline run");
  }
  if (dbpim_run.layers.size() != dense_run.layers.size()) {
    throw ArgumentError("speedup_and_energy: runs cover " +
                        std::to_string(dbpim_run.layers.size()) + " vs " +
                        std::to_string(dense_run.layers.size()) + " layers");
  }

  SimReport report;
  double db_energy_sum = 0.0;
  double dense_energy_sum = 0.0;
  std::uint64_t db_eff = 0, db_tot = 0, dense_eff = 0, dense_tot = 0;
  for (std::size_t i = 0; i < dbpim_run.layers.size(); ++i) {
    const auto& db = dbpim_run.layers[i];
    const auto& dense = dense_run.layers[i];
    if (db.filters != dense.filters || db.reduction != dense.reduction) {
      throw ArgumentError("speedup_and_energy: layer " + std::to_string(i) +
                          " shapes differ between the runs");
    }
    if (db.outputs != dense.outputs) {
      throw ShapeError("speedup_and_energy: layer " + std::to_string(i) +
                       " outputs differ between the runs; the comparison "
                       "requires equivalent computations");
    }

    LayerComparison cmp;
    cmp.layer_index = db.layer_index;
    cmp.filters = db.filters;
    cmp.reduction = db.reduction;
    cmp.dbpim_cycles = db.cycles;
    cmp.dense_cycles = dense.cycles;
    if (db.cycles > 0) {
      cmp.speedup_defined = true;
      cmp.speedup = static_cast<double>(dense.cycles) / static_cast<double>(db.cycles);
    }
    cmp.dbpim_energy = energy_of(db.tallies, costs);
    cmp.dense_energy = energy_of(dense.tallies, costs);
    if (cmp.dense_energy > 0.0) {
      cmp.savings_defined = true;
      cmp.energy_savings = 1.0 - cmp.dbpim_energy / cmp.dense_energy;
    }
    cmp.dbpim_u_act = utilization(db.tallies.effective_cells, db.tallies.total_cells).u_act;
    cmp.dense_u_act =
        utilization(dense.tallies.effective_cells, dense.tallies.total_cells).u_act;
    report.layers.push_back(cmp);

    report.dbpim_cycles += db.cycles;
    report.dense_cycles += dense.cycles;
    db_energy_sum += cmp.dbpim_energy;
    dense_energy_sum += cmp.dense_energy;
    db_eff += db.tallies.effective_cells;
    db_tot += db.tallies.total_cells;
    dense_eff += dense.tallies.effective_cells;
    dense_tot += dense.tallies.total_cells;
  }

  if (report.dbpim_cycles > 0) {
    report.speedup_defined = true;
    report.speedup = static_cast<double>(report.dense_cycles) /
                     static_cast<double>(report.dbpim_cycles);
  }
  report.dbpim_energy = db_energy_sum;
  report.dense_energy = dense_energy_sum;
  if (dense_energy_sum > 0.0) {
    report.savings_defined = true;
    report.energy_savings = 1.0 - db_energy_sum / dense_energy_sum;
  }
  report.dbpim_util = utilization(db_eff, db_tot);
  report.dense_util = utilization(dense_eff, dense_tot);
  return report;
}

}  // namespace dbpim

#include "dbpim/tensor_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "dbpim/errors.hpp"

namespace dbpim {

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void fail_parse(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

const Json& req(const Json& j, const char* key, const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) {
    fail_parse(origin, "missing field '" + std::string(key) + "'");
  }
  return *it;
}

std::int64_t req_int(const Json& j, const char* key, const std::string& origin,
                     std::int64_t lo, std::int64_t hi) {
  const Json& v = req(j, key, origin);
  if (!v.is_number_integer()) {
    fail_parse(origin, "field '" + std::string(key) + "' must be an integer");
  }
  auto value = v.get<std::int64_t>();
  if (value < lo || value > hi) {
    fail_parse(origin, "field '" + std::string(key) + "' value " +
                           std::to_string(value) + " outside [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return value;
}

std::uint64_t req_u64(const Json& j, const char* key, const std::string& origin) {
  const Json& v = req(j, key, origin);
  bool ok = v.is_number_unsigned() ||
            (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  if (!ok) {
    fail_parse(origin, "field '" + std::string(key) + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double req_double(const Json& j, const char* key, const std::string& origin) {
  const Json& v = req(j, key, origin);
  if (!v.is_number()) {
    fail_parse(origin, "field '" + std::string(key) + "' must be a number");
  }
  return v.get<double>();
}

std::string req_string(const Json& j, const char* key, const std::string& origin) {
  const Json& v = req(j, key, origin);
  if (!v.is_string()) {
    fail_parse(origin, "field '" + std::string(key) + "' must be a string");
  }
  return v.get<std::string>();
}

void check_header(const Json& j, const char* type, const std::string& origin) {
  if (!j.is_object()) {
    fail_parse(origin, "expected a JSON object");
  }
  if (req_int(j, "format_version", origin, 1, 1 << 20) != kFormatVersion) {
    fail_parse(origin, "unsupported format_version");
  }
  auto tag = req_string(j, "type", origin);
  if (tag != type) {
    fail_parse(origin, "expected type '" + std::string(type) + "', found '" + tag + "'");
  }
}

std::string mode_name(SimMode mode) {
  return mode == SimMode::DbPim ? "dbpim" : "dense";
}

SimMode mode_from_name(const std::string& name, const std::string& origin) {
  if (name == "dbpim") {
    return SimMode::DbPim;
  }
  if (name == "dense") {
    return SimMode::DenseBaseline;
  }
  fail_parse(origin, "unknown mode '" + name + "'");
}

std::string table_mode_name(TableMode mode) {
  return mode == TableMode::Exact ? "exact" : "atmost";
}

TableMode table_mode_from_name(const std::string& name, const std::string& origin) {
  if (name == "exact") {
    return TableMode::Exact;
  }
  if (name == "atmost") {
    return TableMode::AtMost;
  }
  fail_parse(origin, "unknown table mode '" + name + "'");
}

// Shortest round-trip number rendering, shared with the CSV emitter.
std::string number_repr(double v) {
  return Json(v).dump();
}

}  // namespace

std::string dtype_name(Signedness signedness) {
  return signedness == Signedness::Signed8 ? "i8" : "u8";
}

Signedness dtype_from_name(const std::string& name, const std::string& origin) {
  if (name == "i8") {
    return Signedness::Signed8;
  }
  if (name == "u8") {
    return Signedness::Unsigned8;
  }
  fail_parse(origin, "unknown dtype '" + name + "' (expected 'i8' or 'u8')");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(path + ": cannot open file for writing");
  }
  out << content;
  if (!out) {
    throw Error(path + ": write failed");
  }
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    byte = std::min(byte, text.size());
    auto line = 1 + std::count(text.begin(),
                               text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    throw ParseError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
}

Json load_json(const std::string& path) {
  return parse_json_text(read_text_file(path), path);
}

std::string json_type_tag(const Json& j, const std::string& origin) {
  if (!j.is_object()) {
    fail_parse(origin, "expected a JSON object");
  }
  return req_string(j, "type", origin);
}

Tensor tensor_from_json(const Json& j, const std::string& origin,
                        std::size_t max_elements) {
  check_header(j, "dbpim-tensor", origin);
  Tensor tensor;
  const Json& dims = req(j, "dims", origin);
  if (!dims.is_array() || dims.empty()) {
    fail_parse(origin, "field 'dims' must be a non-empty array");
  }
  std::size_t count = 1;
  for (const auto& d : dims) {
    if (!d.is_number_integer() || d.get<std::int64_t>() < 1) {
      fail_parse(origin, "dims entries must be integers >= 1");
    }
    tensor.dims.push_back(d.get<std::size_t>());
    count *= d.get<std::size_t>();
  }
  if (count > max_elements) {
    throw CapacityError(origin + ": tensor of " + std::to_string(count) +
                        " elements exceeds the limit of " +
                        std::to_string(max_elements) +
                        " (max_tensor_elements)");
  }
  tensor.signedness = dtype_from_name(req_string(j, "dtype", origin), origin);
  const Json& data = req(j, "data", origin);
  if (!data.is_array()) {
    fail_parse(origin, "field 'data' must be an array");
  }
  if (data.size() != count) {
    throw ShapeError(origin + ": dims describe " + std::to_string(count) +
                     " elements but data holds " + std::to_string(data.size()));
  }
  int lo = tensor.signedness == Signedness::Signed8 ? -128 : 0;
  int hi = tensor.signedness == Signedness::Signed8 ? 127 : 255;
  tensor.data.reserve(count);
  for (const auto& v : data) {
    if (!v.is_number_integer()) {
      throw ShapeError(origin + ": data entries must be integers");
    }
    auto value = v.get<std::int64_t>();
    if (value < lo || value > hi) {
      throw ShapeError(origin + ": data value " + std::to_string(value) +
                       " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] for dtype " +
                       dtype_name(tensor.signedness));
    }
    tensor.data.push_back(static_cast<int>(value));
  }
  return tensor;
}

Tensor load_tensor(const std::string& path, std::size_t max_elements) {
  return tensor_from_json(load_json(path), path, max_elements);
}

Json tensor_to_json(const Tensor& tensor) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "dbpim-tensor";
  j["dims"] = tensor.dims;
  j["dtype"] = dtype_name(tensor.signedness);
  j["data"] = tensor.data;
  return j;
}

void save_tensor(const Tensor& tensor, const std::string& path) {
  write_text_file(path, tensor_to_json(tensor).dump(2) + "\n");
}

MacroConfig config_from_json(const Json& j, const std::string& origin) {
  if (!j.is_object()) {
    fail_parse(origin, "expected a JSON object");
  }
  MacroConfig config;
  static const std::vector<std::string> known = {
      "format_version", "type", "num_macros", "compartments_per_macro",
      "dbmus_per_compartment", "rows_per_dbmu", "input_group_size",
      "dense_filters_per_pass", "fta_mode", "input_signedness",
      "enable_input_skipping", "include_weight_load_cycles", "seed",
      "max_tensor_elements", "feature_buffer_bytes", "instruction_buffer_bytes",
      "weight_buffer_bytes", "meta_buffer_bytes", "energy", "affine"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      fail_parse(origin, "unknown config field '" + it.key() + "'");
    }
  }
  if (j.contains("type") && j["type"] != "dbpim-config") {
    fail_parse(origin, "expected type 'dbpim-config'");
  }
  auto get_int = [&](const char* key, int current, int lo, int hi) {
    return j.contains(key) ? static_cast<int>(req_int(j, key, origin, lo, hi))
                           : current;
  };
  auto get_size = [&](const char* key, std::size_t current) {
    return j.contains(key)
               ? static_cast<std::size_t>(req_int(j, key, origin, 1, std::int64_t{1} << 40))
               : current;
  };
  auto get_bool = [&](const char* key, bool current) {
    if (!j.contains(key)) {
      return current;
    }
    if (!j[key].is_boolean()) {
      fail_parse(origin, "field '" + std::string(key) + "' must be a boolean");
    }
    return j[key].get<bool>();
  };
  config.num_macros = get_int("num_macros", config.num_macros, 1, 1 << 16);
  config.compartments_per_macro =
      get_int("compartments_per_macro", config.compartments_per_macro, 1, 1 << 16);
  config.dbmus_per_compartment =
      get_int("dbmus_per_compartment", config.dbmus_per_compartment, 1, 1 << 16);
  config.rows_per_dbmu = get_int("rows_per_dbmu", config.rows_per_dbmu, 1, 1 << 20);
  config.input_group_size =
      get_int("input_group_size", config.input_group_size, 1, 1 << 16);
  config.dense_filters_per_pass =
      get_int("dense_filters_per_pass", config.dense_filters_per_pass, 1, 1 << 16);
  if (j.contains("fta_mode")) {
    config.fta_mode = table_mode_from_name(req_string(j, "fta_mode", origin), origin);
  }
  if (j.contains("input_signedness")) {
    config.input_signedness =
        dtype_from_name(req_string(j, "input_signedness", origin), origin);
  }
  config.enable_input_skipping =
      get_bool("enable_input_skipping", config.enable_input_skipping);
  config.include_weight_load_cycles =
      get_bool("include_weight_load_cycles", config.include_weight_load_cycles);
  if (j.contains("seed")) {
    config.seed = req_u64(j, "seed", origin);
  }
  config.max_tensor_elements = get_size("max_tensor_elements", config.max_tensor_elements);
  config.feature_buffer_bytes = get_size("feature_buffer_bytes", config.feature_buffer_bytes);
  config.instruction_buffer_bytes =
      get_size("instruction_buffer_bytes", config.instruction_buffer_bytes);
  config.weight_buffer_bytes = get_size("weight_buffer_bytes", config.weight_buffer_bytes);
  config.meta_buffer_bytes = get_size("meta_buffer_bytes", config.meta_buffer_bytes);
  if (j.contains("energy")) {
    const Json& e = j["energy"];
    if (!e.is_object()) {
      fail_parse(origin, "field 'energy' must be an object");
    }
    static const std::vector<std::string> energy_keys = {
        "macro_bit_cycle", "row_load", "buffer_read", "buffer_write",
        "postprocess_op"};
    for (auto it = e.begin(); it != e.end(); ++it) {
      if (std::find(energy_keys.begin(), energy_keys.end(), it.key()) ==
          energy_keys.end()) {
        fail_parse(origin, "unknown energy field '" + it.key() + "'");
      }
    }
    auto get_cost = [&](const char* key, double current) {
      return e.contains(key) ? req_double(e, key, origin) : current;
    };
    config.energy.macro_bit_cycle = get_cost("macro_bit_cycle", config.energy.macro_bit_cycle);
    config.energy.row_load = get_cost("row_load", config.energy.row_load);
    config.energy.buffer_read = get_cost("buffer_read", config.energy.buffer_read);
    config.energy.buffer_write = get_cost("buffer_write", config.energy.buffer_write);
    config.energy.postprocess_op = get_cost("postprocess_op", config.energy.postprocess_op);
  }
  if (j.contains("affine")) {
    const Json& a = j["affine"];
    if (!a.is_object()) {
      fail_parse(origin, "field 'affine' must be an object");
    }
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (it.key() != "mul" && it.key() != "shift") {
        fail_parse(origin, "unknown affine field '" + it.key() + "'");
      }
    }
    if (a.contains("mul")) {
      config.affine.mul = req_int(a, "mul", origin, std::numeric_limits<std::int32_t>::min(),
                                  std::numeric_limits<std::int32_t>::max());
    }
    if (a.contains("shift")) {
      config.affine.shift = static_cast<int>(req_int(a, "shift", origin, 0, 62));
    }
  }
  config.validate();
  return config;
}

MacroConfig load_config(const std::string& path) {
  return config_from_json(load_json(path), path);
}

Json config_to_json(const MacroConfig& config) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "dbpim-config";
  j["num_macros"] = config.num_macros;
  j["compartments_per_macro"] = config.compartments_per_macro;
  j["dbmus_per_compartment"] = config.dbmus_per_compartment;
  j["rows_per_dbmu"] = config.rows_per_dbmu;
  j["input_group_size"] = config.input_group_size;
  j["dense_filters_per_pass"] = config.dense_filters_per_pass;
  j["fta_mode"] = table_mode_name(config.fta_mode);
  j["input_signedness"] = dtype_name(config.input_signedness);
  j["enable_input_skipping"] = config.enable_input_skipping;
  j["include_weight_load_cycles"] = config.include_weight_load_cycles;
  j["seed"] = config.seed;
  j["max_tensor_elements"] = config.max_tensor_elements;
  j["feature_buffer_bytes"] = config.feature_buffer_bytes;
  j["instruction_buffer_bytes"] = config.instruction_buffer_bytes;
  j["weight_buffer_bytes"] = config.weight_buffer_bytes;
  j["meta_buffer_bytes"] = config.meta_buffer_bytes;
  j["energy"] = {{"macro_bit_cycle", config.energy.macro_bit_cycle},
                 {"row_load", config.energy.row_load},
                 {"buffer_read", config.energy.buffer_read},
                 {"buffer_write", config.energy.buffer_write},
                 {"postprocess_op", config.energy.postprocess_op}};
  j["affine"] = {{"mul", config.affine.mul}, {"shift", config.affine.shift}};
  return j;
}

Json quantized_to_json(const QuantizedModel& model, const QuantizeSummary& summary) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "dbpim-quantized";
  j["mode"] = table_mode_name(model.mode);
  j["reduction"] = model.reduction;
  Json filters = Json::array();
  for (const auto& f : model.filters) {
    Json jf;
    jf["filter_id"] = f.filter_id;
    jf["phi_threshold"] = f.phi_threshold;
    jf["weights"] = f.weights;
    Json blocks = Json::array();
    for (const auto& set : f.per_weight_blocks) {
      Json per_weight = Json::array();
      for (const auto& block : set.blocks) {
        if (block.kind != BlockKind::CompPattern) {
          continue;
        }
        per_weight.push_back({{"sign", block.sign < 0 ? 1 : 0},
                              {"index", block.index},
                              {"position", block.position_in_block}});
      }
      blocks.push_back(std::move(per_weight));
    }
    jf["blocks"] = std::move(blocks);
    filters.push_back(std::move(jf));
  }
  j["filters"] = std::move(filters);
  j["summary"] = {{"threshold_histogram", summary.threshold_histogram},
                  {"mean_abs_error", summary.mean_abs_error}};
  return j;
}

void save_quantized(const QuantizedModel& model, const QuantizeSummary& summary,
                    const std::string& path) {
  write_text_file(path, quantized_to_json(model, summary).dump(2) + "\n");
}

QuantizedModel quantized_from_json(const Json& j, const std::string& origin) {
  check_header(j, "dbpim-quantized", origin);
  QuantizedModel model;
  model.mode = table_mode_from_name(req_string(j, "mode", origin), origin);
  model.reduction = static_cast<int>(req_int(j, "reduction", origin, 1, 1 << 24));
  const Json& filters = req(j, "filters", origin);
  if (!filters.is_array() || filters.empty()) {
    fail_parse(origin, "field 'filters' must be a non-empty array");
  }
  for (const auto& jf : filters) {
    ThresholdedFilter f;
    f.filter_id = static_cast<int>(req_int(jf, "filter_id", origin, 0, 1 << 24));
    f.phi_threshold = static_cast<int>(req_int(jf, "phi_threshold", origin, 0, 2));
    const Json& weights = req(jf, "weights", origin);
    if (!weights.is_array() ||
        weights.size() != static_cast<std::size_t>(model.reduction)) {
      fail_parse(origin, "filter " + std::to_string(f.filter_id) +
                             ": weights must be an array of length " +
                             std::to_string(model.reduction));
    }
    for (const auto& w : weights) {
      if (!w.is_number_integer() || w.get<std::int64_t>() < -128 ||
          w.get<std::int64_t>() > 127) {
        fail_parse(origin, "filter " + std::to_string(f.filter_id) +
                               ": weights must be integers in [-128, 127]");
      }
      f.weights.push_back(static_cast<std::int8_t>(w.get<std::int64_t>()));
    }
    const Json& blocks = req(jf, "blocks", origin);
    if (!blocks.is_array() ||
        blocks.size() != static_cast<std::size_t>(model.reduction)) {
      fail_parse(origin, "filter " + std::to_string(f.filter_id) +
                             ": blocks must be an array of length " +
                             std::to_string(model.reduction));
    }
    for (const auto& per_weight : blocks) {
      if (!per_weight.is_array()) {
        fail_parse(origin, "per-weight blocks must be arrays");
      }
      DyadicBlockSet set{};
      for (int k = 0; k < 4; ++k) {
        set.blocks[static_cast<std::size_t>(k)].index = static_cast<std::uint8_t>(k);
      }
      for (const auto& jb : per_weight) {
        int sign_bit = static_cast<int>(req_int(jb, "sign", origin, 0, 1));
        int index = static_cast<int>(req_int(jb, "index", origin, 0, 3));
        int position = static_cast<int>(req_int(jb, "position", origin, 0, 1));
        auto& block = set.blocks[static_cast<std::size_t>(index)];
        if (block.kind == BlockKind::CompPattern) {
          fail_parse(origin, "filter " + std::to_string(f.filter_id) +
                                 ": duplicate block index " + std::to_string(index));
        }
        block.kind = BlockKind::CompPattern;
        block.sign = sign_bit ? -1 : +1;
        block.position_in_block = static_cast<std::uint8_t>(position);
        set.phi += 1;
      }
      if (set.phi > f.phi_threshold) {
        fail_parse(origin, "filter " + std::to_string(f.filter_id) +
                               ": a weight stores " + std::to_string(set.phi) +
                               " digits above threshold " +
                               std::to_string(f.phi_threshold));
      }
      f.per_weight_blocks.push_back(set);
    }
    model.filters.push_back(std::move(f));
  }
  return model;
}

QuantizedModel load_quantized(const std::string& path) {
  return quantized_from_json(load_json(path), path);
}

Json compiled_to_json(const CompiledLayer& layer, const InstructionStream& stream) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "dbpim-compiled";
  j["mode"] = mode_name(layer.mode);
  j["filters"] = layer.num_filters;
  j["reduction"] = layer.reduction;
  j["geometry"] = {{"num_macros", layer.num_macros},
                   {"compartments_per_macro", layer.compartments},
                   {"dbmus_per_compartment", layer.dbmus},
                   {"rows_per_dbmu", layer.rows}};
  j["phi_threshold_by_filter"] = layer.phi_threshold_by_filter;
  j["skipped_zero_filters"] = layer.skipped_zero_filters;
  Json passes = Json::array();
  for (const auto& p : layer.passes) {
    passes.push_back({{"pass", p.pass_id},
                      {"macro", p.macro},
                      {"phi_threshold", p.phi_threshold},
                      {"slots_per_filter", p.slots_per_filter},
                      {"row_begin", p.row_begin},
                      {"tiles", p.tiles},
                      {"filter_ids", p.filter_ids}});
  }
  j["passes"] = std::move(passes);
  Json schedule = Json::array();
  for (const auto& r : layer.row_schedule) {
    schedule.push_back({{"pass", r.pass_id},
                        {"macro", r.macro},
                        {"row", r.row},
                        {"tile", r.tile},
                        {"input_base", r.input_base}});
  }
  j["row_schedule"] = std::move(schedule);
  Json cells = Json::array();
  for (int m = 0; m < layer.num_macros; ++m) {
    for (int c = 0; c < layer.compartments; ++c) {
      for (int r = 0; r < layer.rows; ++r) {
        for (int d = 0; d < layer.dbmus; ++d) {
          const auto& cell = layer.at(m, c, r, d);
          if (cell.owner_slot < 0) {
            continue;
          }
          cells.push_back({{"macro", m},
                           {"compartment", c},
                           {"row", r},
                           {"dbmu", d},
                           {"enabled", cell.enabled},
                           {"sign", cell.sign < 0 ? 1 : 0},
                           {"index", cell.index},
                           {"position", cell.position},
                           {"owner_slot", cell.owner_slot}});
        }
      }
    }
  }
  j["cells"] = std::move(cells);
  Json ops = Json::array();
  for (const auto& op : stream.ops) {
    switch (op.op) {
      case OpKind::LoadWeights:
        ops.push_back({{"op", "load_weights"},
                       {"pass", op.pass_id},
                       {"macro", op.macro},
                       {"row", op.row},
                       {"row_end", op.row_end}});
        break;
      case OpKind::Compute:
        ops.push_back({{"op", "compute"},
                       {"pass", op.pass_id},
                       {"macro", op.macro},
                       {"row", op.row},
                       {"tile", op.tile},
                       {"input_base", op.input_base},
                       {"column", op.column}});
        break;
      case OpKind::Accumulate:
        ops.push_back({{"op", "accumulate"}, {"pass", op.pass_id}, {"tile", op.tile}});
        break;
      case OpKind::WriteBack:
        ops.push_back({{"op", "write_back"}, {"pass", op.pass_id}});
        break;
    }
  }
  j["instructions"] = std::move(ops);
  return j;
}

void save_compiled(const CompiledLayer& layer, const InstructionStream& stream,
                   const std::string& path) {
  write_text_file(path, compiled_to_json(layer, stream).dump(2) + "\n");
}

namespace {

Json tallies_to_json(const SimTallies& t) {
  return {{"compute_cycles", t.compute_cycles},
          {"skipped_cycles", t.skipped_cycles},
          {"row_loads", t.row_loads},
          {"effective_cells", t.effective_cells},
          {"total_cells", t.total_cells},
          {"postprocess_ops", t.postprocess_ops},
          {"buffer_reads", t.buffer_reads},
          {"buffer_writes", t.buffer_writes}};
}

SimTallies tallies_from_json(const Json& j, const std::string& origin) {
  SimTallies t;
  t.compute_cycles = req_u64(j, "compute_cycles", origin);
  t.skipped_cycles = req_u64(j, "skipped_cycles", origin);
  t.row_loads = req_u64(j, "row_loads", origin);
  t.effective_cells = req_u64(j, "effective_cells", origin);
  t.total_cells = req_u64(j, "total_cells", origin);
  t.postprocess_ops = req_u64(j, "postprocess_ops", origin);
  t.buffer_reads = req_u64(j, "buffer_reads", origin);
  t.buffer_writes = req_u64(j, "buffer_writes", origin);
  return t;
}

}  // namespace

Json run_report_to_json(const RunReport& report) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "dbpim-run-report";
  j["mode"] = mode_name(report.mode);
  Json layers = Json::array();
  for (const auto& layer : report.layers) {
    Json jl;
    jl["layer"] = layer.layer_index;
    jl["filters"] = layer.filters;
    jl["reduction"] = layer.reduction;
    jl["threshold_histogram"] = layer.phi_threshold_histogram;
    jl["cycles"] = layer.cycles;
    jl["tallies"] = tallies_to_json(layer.tallies);
    jl["utilization"] = {{"u_act", layer.util.u_act},
                         {"no_cells", layer.util.no_cells}};
    jl["energy"] = layer.energy;
    jl["outputs"] = layer.outputs;
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  j["totals"] = {{"cycles", report.total_cycles},
                 {"energy", report.total_energy},
                 {"u_act", report.total_util.u_act}};
  return j;
}

void save_run_report(const RunReport& report, const std::string& path) {
  write_text_file(path, run_report_to_json(report).dump(2) + "\n");
}

RunReport run_report_from_json(const Json& j, const std::string& origin) {
  check_header(j, "dbpim-run-report", origin);
  RunReport report;
  report.mode = mode_from_name(req_string(j, "mode", origin), origin);
  const Json& layers = req(j, "layers", origin);
  if (!layers.is_array()) {
    fail_parse(origin, "field 'layers' must be an array");
  }
  for (const auto& jl : layers) {
    LayerRunReport layer;
    layer.layer_index = static_cast<int>(req_int(jl, "layer", origin, 0, 1 << 24));
    layer.filters = static_cast<int>(req_int(jl, "filters", origin, 1, 1 << 24));
    layer.reduction = static_cast<int>(req_int(jl, "reduction", origin, 1, 1 << 24));
    const Json& hist = req(jl, "threshold_histogram", origin);
    if (!hist.is_array() || hist.size() != 3) {
      fail_parse(origin, "threshold_histogram must hold 3 entries");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      layer.phi_threshold_histogram[i] = hist[i].get<int>();
    }
    layer.cycles = req_u64(jl, "cycles", origin);
    layer.tallies = tallies_from_json(req(jl, "tallies", origin), origin);
    layer.util =
        utilization(layer.tallies.effective_cells, layer.tallies.total_cells);
    layer.energy = req_double(jl, "energy", origin);
    const Json& outputs = req(jl, "outputs", origin);
    if (!outputs.is_array()) {
      fail_parse(origin, "field 'outputs' must be an array");
    }
    for (const auto& v : outputs) {
      if (!v.is_number_integer()) {
        fail_parse(origin, "outputs must be integers");
      }
      layer.outputs.push_back(v.get<std::int64_t>());
    }
    if (layer.outputs.size() != static_cast<std::size_t>(layer.filters)) {
      fail_parse(origin, "outputs length does not match the filter count");
    }
    report.layers.push_back(std::move(layer));
  }
  report.finalize();
  return report;
}

RunReport load_run_report(const std::string& path) {
  return run_report_from_json(load_json(path), path);
}

namespace {

Json optional_number(bool defined, double value) {
  if (defined) {
    return value;
  }
  return nullptr;
}

}  // namespace

Json sim_report_to_json(const SimReport& report) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "dbpim-comparison";
  Json layers = Json::array();
  for (const auto& layer : report.layers) {
    layers.push_back({{"layer", layer.layer_index},
                      {"filters", layer.filters},
                      {"reduction", layer.reduction},
                      {"dbpim_cycles", layer.dbpim_cycles},
                      {"dense_cycles", layer.dense_cycles},
                      {"speedup", optional_number(layer.speedup_defined, layer.speedup)},
                      {"dbpim_energy", layer.dbpim_energy},
                      {"dense_energy", layer.dense_energy},
                      {"energy_savings",
                       optional_number(layer.savings_defined, layer.energy_savings)},
                      {"dbpim_u_act", layer.dbpim_u_act},
                      {"dense_u_act", layer.dense_u_act}});
  }
  j["layers"] = std::move(layers);
  j["totals"] = {{"dbpim_cycles", report.dbpim_cycles},
                 {"dense_cycles", report.dense_cycles},
                 {"speedup", optional_number(report.speedup_defined, report.speedup)},
                 {"dbpim_energy", report.dbpim_energy},
                 {"dense_energy", report.dense_energy},
                 {"energy_savings",
                  optional_number(report.savings_defined, report.energy_savings)},
                 {"dbpim_u_act", report.dbpim_util.u_act},
                 {"dense_u_act", report.dense_util.u_act}};
  return j;
}

std::string sim_report_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "layer,filters,reduction,dbpim_cycles,dense_cycles,speedup,"
         "dbpim_energy,dense_energy,energy_savings,dbpim_u_act,dense_u_act\n";
  auto opt = [](bool defined, double v) {
    return defined ? number_repr(v) : std::string();
  };
  for (const auto& layer : report.layers) {
    out << layer.layer_index << ',' << layer.filters << ',' << layer.reduction
        << ',' << layer.dbpim_cycles << ',' << layer.dense_cycles << ','
        << opt(layer.speedup_defined, layer.speedup) << ','
        << number_repr(layer.dbpim_energy) << ',' << number_repr(layer.dense_energy)
        << ',' << opt(layer.savings_defined, layer.energy_savings) << ','
        << number_repr(layer.dbpim_u_act) << ',' << number_repr(layer.dense_u_act)
        << '\n';
  }
  out << "total,,," << report.dbpim_cycles << ',' << report.dense_cycles << ','
      << opt(report.speedup_defined, report.speedup) << ','
      << number_repr(report.dbpim_energy) << ',' << number_repr(report.dense_energy)
      << ',' << opt(report.savings_defined, report.energy_savings) << ','
      << number_repr(report.dbpim_util.u_act) << ','
      << number_repr(report.dense_util.u_act) << '\n';
  return out.str();
}

}  // namespace dbpim

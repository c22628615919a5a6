#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbpim/compiler.hpp"
#include "dbpim/config.hpp"
#include "dbpim/fta.hpp"
#include "dbpim/metrics.hpp"

namespace dbpim {

// JSON file formats. Every file carries "format_version" and a "type" tag;
// loaders reject unknown tags and versions, and emitters produce
// byte-stable output for identical inputs (ordered fields, shortest
// round-trip number formatting).

using Json = nlohmann::ordered_json;

std::string dtype_name(Signedness signedness);
Signedness dtype_from_name(const std::string& name, const std::string& origin);

struct Tensor {
  std::vector<std::size_t> dims;
  Signedness signedness = Signedness::Signed8;
  std::vector<int> data;  // row-major

  std::size_t element_count() const {
    std::size_t n = 1;
    for (auto d : dims) {
      n *= d;
    }
    return n;
  }
};

struct QuantizedModel {
  TableMode mode = TableMode::Exact;
  int reduction = 0;
  std::vector<ThresholdedFilter> filters;
};

struct QuantizeSummary {
  std::array<int, 3> threshold_histogram{};
  double mean_abs_error = 0.0;
};

// Basic text/JSON plumbing. Parse failures surface as ParseError with the
// origin and line number.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json(const std::string& path);

// "type" tag of a parsed file, used to dispatch mixed-format arguments.
std::string json_type_tag(const Json& j, const std::string& origin);

Tensor tensor_from_json(const Json& j, const std::string& origin,
                        std::size_t max_elements);
Tensor load_tensor(const std::string& path, std::size_t max_elements);
Json tensor_to_json(const Tensor& tensor);
void save_tensor(const Tensor& tensor, const std::string& path);

// Strict config parsing: unknown fields are rejected, missing fields fall
// back to the defaults in MacroConfig.
MacroConfig config_from_json(const Json& j, const std::string& origin);
MacroConfig load_config(const std::string& path);
Json config_to_json(const MacroConfig& config);

Json quantized_to_json(const QuantizedModel& model, const QuantizeSummary& summary);
void save_quantized(const QuantizedModel& model, const QuantizeSummary& summary,
                    const std::string& path);
QuantizedModel quantized_from_json(const Json& j, const std::string& origin);
QuantizedModel load_quantized(const std::string& path);

Json compiled_to_json(const CompiledLayer& layer, const InstructionStream& stream);
void save_compiled(const CompiledLayer& layer, const InstructionStream& stream,
                   const std::string& path);

Json run_report_to_json(const RunReport& report);
void save_run_report(const RunReport& report, const std::string& path);
RunReport run_report_from_json(const Json& j, const std::string& origin);
RunReport load_run_report(const std::string& path);

Json sim_report_to_json(const SimReport& report);
std::string sim_report_to_csv(const SimReport& report);

}  // namespace dbpim

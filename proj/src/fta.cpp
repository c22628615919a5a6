#include "dbpim/fta.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "dbpim/errors.hpp"

namespace dbpim {

std::vector<int> phi_profile(const Filter& filter) {
  std::vector<int> profile;
  profile.reserve(filter.weights.size());
  for (auto w : filter.weights) {
    profile.push_back(count_nonzeros(to_csd(w)));
  }
  return profile;
}

int select_threshold(std::span<const int> profile) {
  if (profile.empty()) {
    throw ArgumentError("select_threshold: empty profile");
  }
  std::array<int, 5> freq{};
  for (int phi : profile) {
    if (phi < 0 || phi > 4) {
      throw ArgumentError("select_threshold: profile entry " +
                          std::to_string(phi) + " outside [0, 4]");
    }
    freq[static_cast<std::size_t>(phi)] += 1;
  }
  if (freq[0] == static_cast<int>(profile.size())) {
    return 0;
  }
  int mode_count = 0;
  int best = 0;
  for (int phi = 0; phi <= 4; ++phi) {
    if (freq[static_cast<std::size_t>(phi)] > best) {
      best = freq[static_cast<std::size_t>(phi)];
      mode_count = phi;
    }
  }
  if (mode_count == 0) {
    return 1;
  }
  return mode_count > 2 ? 2 : mode_count;
}

QueryTable build_query_table(int phi_threshold, TableMode mode) {
  if (phi_threshold < 0 || phi_threshold > 2) {
    throw ArgumentError("build_query_table: threshold " +
                        std::to_string(phi_threshold) + " outside [0, 2]");
  }
  QueryTable table;
  table.phi_threshold = phi_threshold;
  table.mode = mode;
  for (int t = -128; t <= 127; ++t) {
    int phi = count_nonzeros(to_csd(t));
    bool admit = (mode == TableMode::Exact) ? phi == phi_threshold
                                            : phi <= phi_threshold;
    if (admit) {
      table.entries.push_back(static_cast<std::int8_t>(t));
    }
  }
  return table;
}

std::int8_t approximate_weight(int w, const QueryTable& table) {
  if (w < -128 || w > 127) {
    throw RangeError("approximate_weight: value " + std::to_string(w) +
                     " outside [-128, 127]");
  }
  if (table.entries.empty()) {
    throw ArgumentError("approximate_weight: empty query table");
  }
  int best = table.entries.front();
  for (std::size_t i = 1; i < table.entries.size(); ++i) {
    int t = table.entries[i];
    int dist = std::abs(t - w);
    int best_dist = std::abs(best - w);
    if (dist < best_dist ||
        (dist == best_dist && std::abs(t) < std::abs(best)) ||
        (dist == best_dist && std::abs(t) == std::abs(best) && t > best)) {
      best = t;
    }
  }
  return static_cast<std::int8_t>(best);
}

std::vector<ThresholdedFilter> fta_quantize(std::span<const Filter> filters,
                                            TableMode mode) {
  std::map<int, QueryTable> tables;
  std::vector<ThresholdedFilter> out;
  out.reserve(filters.size());
  for (const auto& filter : filters) {
    auto profile = phi_profile(filter);
    int threshold = select_threshold(profile);
    ThresholdedFilter tf;
    tf.filter_id = filter.filter_id;
    tf.phi_threshold = threshold;
    tf.weights.reserve(filter.weights.size());
    tf.per_weight_blocks.reserve(filter.weights.size());
    if (threshold == 0) {
      tf.weights.assign(filter.weights.size(), 0);
    } else {
      auto it = tables.find(threshold * 2 + (mode == TableMode::AtMost));
      if (it == tables.end()) {
        it = tables.emplace(threshold * 2 + (mode == TableMode::AtMost),
                            build_query_table(threshold, mode)).first;
      }
      for (auto w : filter.weights) {
        tf.weights.push_back(approximate_weight(w, it->second));
      }
    }
    for (auto w : tf.weights) {
      tf.per_weight_blocks.push_back(to_dyadic_blocks(to_csd(w)));
    }
    out.push_back(std::move(tf));
  }
  return out;
}

}  // namespace dbpim

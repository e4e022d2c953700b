#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bflights/dimension.hpp"
#include "bflights/stats.hpp"

namespace bflights {

// Streaming flight CSV writer: flight_id,worker,n,r,start_side,end_side,censored.
class FlightCsvWriter {
 public:
  explicit FlightCsvWriter(const std::string& path);
  void accept(int stream, std::span<const FlightRecord> records);
  std::int64_t rows() const { return next_id_; }

 private:
  std::ofstream out_;
  std::int64_t next_id_ = 0;
};

// Same column layout, accumulated in memory (determinism checks).
std::string flight_csv_string(int stream, std::span<const FlightRecord> records,
                              std::int64_t first_id);

void write_histogram_csv(const TailHistogram& hist, const std::string& path);
nlohmann::json histogram_to_json(const TailHistogram& hist);
TailHistogram histogram_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const TailFit& fit);
nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json dimension_to_json(const DimensionEstimate& est);
nlohmann::json stats_counters_to_json(const CampaignStats& stats);

// Minimal log-log scatter of the survival function with the fitted line.
void write_loglog_svg(const std::string& path, const std::vector<std::pair<double, double>>& pts,
                      double slope, double intercept, const std::string& title);
void write_survival_svg(const std::string& path, const TailHistogram& hist, const TailFit& fit,
                        const std::string& title);

}  // namespace bflights

#ifndef TLCN_ANOMALY_HPP
#define TLCN_ANOMALY_HPP

#include "tlcn/filter.hpp"
#include "tlcn/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tlcn {

enum class Direction : std::uint8_t { upper, lower };

struct SeriesTick {
    std::size_t t_index = 0;
    std::optional<double> value;          // absent for empty or degenerate intervals
    std::optional<bool> truth_abnormal;   // absent when the trace carries no labels
};

struct CharacteristicSeries {
    std::string metric_name;
    std::vector<SeriesTick> ticks;
};

// psi = mu + lambda_q * sigma (upper) or mu - lambda_q * sigma (lower),
// with lambda_q the one-sided standard normal quantile at 1 - epsilon.
struct ThresholdModel {
    double mu = 0;
    double sigma_std = 0;
    double lambda_q = 0;
    double psi = 0;
    double epsilon = 0;
    Direction direction = Direction::upper;
};

struct DetectionResult {
    std::vector<bool> abnormal;       // per tick
    std::optional<double> accuracy;   // over labeled ticks; absent if none
    double psi_used = 0;
};

// Inverse standard normal CDF on (0, 1).
double normal_quantile(double p);

// Builds one graph per sampling interval and extracts the named scalar
// metric. A tick's truth label is abnormal iff any record in its interval is
// labeled attack; ticks of an unlabeled trace carry no truth. Values are
// absent for empty intervals (and for intervals where the metric is
// undefined, e.g. SPL of an edgeless graph).
CharacteristicSeries characteristic_series(const Trace& trace, Ticks interval,
                                           Ticks delta_w, KeyMode mode,
                                           const NodeFilter& node_filter,
                                           EdgeFilter edge_filter,
                                           const std::string& metric_name);

// Fits mu and the population standard deviation over present values in
// [train_begin, train_end). Throws ValidationError when the span holds fewer
// than two values, contains a labeled-abnormal tick, or epsilon is outside
// (0, 1).
ThresholdModel fit_threshold(const CharacteristicSeries& series, std::size_t train_begin,
                             std::size_t train_end, double epsilon, Direction direction);

// Flags value > psi (upper) or value < psi (lower); absent values are normal.
DetectionResult detect(const CharacteristicSeries& series, const ThresholdModel& model);

// upper for volume-like metrics (node/edge counts, MDR), lower for
// assortativity, SPL and diameter; upper for everything else.
Direction default_direction(const std::string& metric_name);

void write_series_csv(const CharacteristicSeries& series, const DetectionResult* result,
                      std::ostream& out);
void write_threshold_text(const ThresholdModel& model, const DetectionResult* result,
                          std::ostream& out);

} // namespace tlcn

#endif

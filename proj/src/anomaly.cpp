#include "tlcn/anomaly.hpp"
#include "tlcn/build.hpp"
#include "tlcn/error.hpp"
#include "tlcn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace tlcn {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("normal_quantile requires p in (0, 1)");
    // Acklam's rational approximation, then one Halley step against erfc.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
    return x - u / (1 + x * u / 2);
}

CharacteristicSeries characteristic_series(const Trace& trace, Ticks interval,
                                           Ticks delta_w, KeyMode mode,
                                           const NodeFilter& node_filter,
                                           EdgeFilter edge_filter,
                                           const std::string& metric_name) {
    if (!is_scalar_metric(metric_name))
        throw ValidationError("unknown series metric '" + metric_name + "'");

    std::vector<Trace> groups = sample_intervals(trace, interval);
    CharacteristicSeries series;
    series.metric_name = metric_name;
    series.ticks.resize(groups.size());

    MetricsOptions opts;
    opts.with_betweenness = false;

    const auto count = static_cast<std::ptrdiff_t>(groups.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const Trace& g = groups[i];
        SeriesTick tick;
        tick.t_index = static_cast<std::size_t>(i);
        bool any_label = false, any_attack = false;
        for (const FlowRecord& r : g.records) {
            if (r.label != Label::none) any_label = true;
            if (r.label == Label::attack) any_attack = true;
        }
        if (any_label || any_attack)
            tick.truth_abnormal = any_attack;
        if (!g.empty()) {
            MetricsReport rep = compute_metrics(
                build_tlcn(g, delta_w, mode, node_filter, edge_filter), opts);
            tick.value = scalar_metric(rep, metric_name);
        }
        series.ticks[i] = std::move(tick);
    }
    return series;
}

ThresholdModel fit_threshold(const CharacteristicSeries& series, std::size_t train_begin,
                             std::size_t train_end, double epsilon, Direction direction) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1)");
    if (train_begin >= train_end || train_end > series.ticks.size())
        throw ValidationError("invalid training span");

    std::vector<double> values;
    for (std::size_t i = train_begin; i < train_end; ++i) {
        const SeriesTick& t = series.ticks[i];
        if (t.truth_abnormal && *t.truth_abnormal)
            throw ValidationError("training span contains a labeled-abnormal tick (index " +
                                  std::to_string(i) + ")");
        if (t.value)
            values.push_back(*t.value);
    }
    if (values.size() < 2)
        throw ValidationError("training span must contain at least two values");

    ThresholdModel model;
    model.epsilon = epsilon;
    model.direction = direction;
    double sum = 0;
    for (double v : values)
        sum += v;
    model.mu = sum / double(values.size());
    double var = 0;
    for (double v : values)
        var += (v - model.mu) * (v - model.mu);
    model.sigma_std = std::sqrt(var / double(values.size()));
    model.lambda_q = normal_quantile(1.0 - epsilon);
    model.psi = direction == Direction::upper ? model.mu + model.lambda_q * model.sigma_std
                                              : model.mu - model.lambda_q * model.sigma_std;
    return model;
}

DetectionResult detect(const CharacteristicSeries& series, const ThresholdModel& model) {
    DetectionResult res;
    res.psi_used = model.psi;
    res.abnormal.resize(series.ticks.size(), false);
    std::size_t labeled = 0, correct = 0;
    for (std::size_t i = 0; i < series.ticks.size(); ++i) {
        const SeriesTick& t = series.ticks[i];
        bool flag = false;
        if (t.value)
            flag = model.direction == Direction::upper ? *t.value > model.psi
                                                       : *t.value < model.psi;
        res.abnormal[i] = flag;
        if (t.truth_abnormal) {
            ++labeled;
            if (flag == *t.truth_abnormal) ++correct;
        }
    }
    if (labeled > 0)
        res.accuracy = double(correct) / double(labeled);
    return res;
}

Direction default_direction(const std::string& metric_name) {
    if (metric_name == "assortativity" || metric_name == "spl" || metric_name == "diameter")
        return Direction::lower;
    return Direction::upper;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void write_series_csv(const CharacteristicSeries& series, const DetectionResult* result,
                      std::ostream& out) {
    out << "t_index,value,truth,flag\n";
    for (std::size_t i = 0; i < series.ticks.size(); ++i) {
        const SeriesTick& t = series.ticks[i];
        out << t.t_index << ',';
        if (t.value) out << fmt(*t.value);
        out << ',';
        if (t.truth_abnormal) out << (*t.truth_abnormal ? "abnormal" : "normal");
        out << ',';
        if (result) out << (result->abnormal[i] ? "abnormal" : "normal");
        out << '\n';
    }
}

void write_threshold_text(const ThresholdModel& model, const DetectionResult* result,
                          std::ostream& out) {
    out << "mu = " << fmt(model.mu) << '\n';
    out << "sigma_std = " << fmt(model.sigma_std) << '\n';
    out << "lambda_q = " << fmt(model.lambda_q) << '\n';
    out << "epsilon = " << fmt(model.epsilon) << '\n';
    out << "direction = " << (model.direction == Direction::upper ? "upper" : "lower") << '\n';
    out << "psi = " << fmt(model.psi) << '\n';
    if (result && result->accuracy)
        out << "accuracy = " << fmt(*result->accuracy) << '\n';
}

} // namespace tlcn

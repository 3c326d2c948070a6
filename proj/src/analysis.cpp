#include "dampwave/analysis.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dampwave {

std::string to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::BoundHolds: return "BoundHolds";
    case Verdict::BoundViolated: return "BoundViolated";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

FitResult fit_decay(std::span<const double> t, std::span<const double> q, double t0,
                    double exponent, int log_power, const FitOptions& options)
{
    if (t.empty()) throw WindowError("empty series");
    if (t.size() != q.size()) throw WindowError("time and quantity series differ in length");

    FitResult out;
    const double T = t.back();
    out.t_lo = options.window_fraction * T;
    out.t_hi = T;

    auto scaled = [&](std::size_t i) {
        return q[i] * std::pow(t0 + t[i], exponent) / std::pow(std::log(2.0 + t[i]), log_power);
    };

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    bool positive = true;
    out.sup_scaled = 0.0;
    out.sup_previous = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= out.t_lo) {
            ++out.samples;
            if (!(q[i] > 0.0)) {
                positive = false;
                continue;
            }
            const double x = std::log(t0 + t[i]);
            const double y = std::log(q[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        if (t[i] >= 0.5 * T)
            out.sup_scaled = std::max(out.sup_scaled, scaled(i));
        else if (t[i] >= 0.25 * T)
            out.sup_previous = std::max(out.sup_previous, scaled(i));
    }
    if (out.samples == 0) throw WindowError("no records in the fit window");

    const double m = static_cast<double>(out.samples);
    const double det = m * sxx - sx * sx;
    if (positive && det > 0.0) {
        out.slope = (m * sxy - sx * sy) / det;
        out.intercept = (sy - out.slope * sx) / m;
    }

    if (out.samples < options.min_records || !positive || !(out.sup_previous > 0.0)) {
        out.verdict = Verdict::Inconclusive;
        return out;
    }
    out.growth = out.sup_scaled / out.sup_previous;
    out.verdict = out.growth > options.growth_factor ? Verdict::BoundViolated : Verdict::BoundHolds;
    return out;
}

double select(const EnergyRecord& record, Quantity quantity)
{
    switch (quantity) {
    case Quantity::Energy: return record.E;
    case Quantity::WeightedL2: return record.aL2;
    case Quantity::PlainL2: return record.L2;
    }
    return 0.0;
}

double bound_exponent(Quantity quantity, const DecayPrediction& prediction)
{
    switch (quantity) {
    case Quantity::Energy: return 1.0 + prediction.mu;
    case Quantity::WeightedL2: return prediction.mu;
    case Quantity::PlainL2: return prediction.l2_mu;
    }
    return prediction.mu;
}

FitResult fit_decay(std::span<const EnergyRecord> records, Quantity quantity, double t0,
                    const DecayPrediction& prediction, const FitOptions& options)
{
    std::vector<double> t(records.size()), q(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        t[i] = records[i].t;
        q[i] = select(records[i], quantity);
    }
    return fit_decay(t, q, t0, bound_exponent(quantity, prediction), prediction.log_power, options);
}

} // namespace dampwave

#include "dampwave/decay_theory.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dampwave {

namespace {

int compare(double x, double y)
{
    if (ties(x, y)) return 0;
    return x < y ? -1 : 1;
}

double linear_rate(const ModelParams& params)
{
    return (params.n - params.alpha) / (2.0 - params.alpha);
}

// Composite Simpson with an even panel count.
template <class F>
double simpson(F&& f, double lo, double hi, int panels)
{
    if (panels % 2) ++panels;
    const double h = (hi - lo) / panels;
    double acc = f(lo) + f(hi);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
    return acc * h / 3.0;
}

} // namespace

double p_subc(int n, double alpha) { return 1.0 + 2.0 * alpha / (n - alpha); }

double p_fujita(double d) { return 1.0 + 2.0 / d; }

double mu_one(const ModelParams& params)
{
    return 4.0 / (2.0 - params.alpha) * (1.0 / (params.p - 1.0) - (params.n - params.alpha) / 4.0);
}

double mu_two(double p) { return 2.0 / (p - 1.0); }

bool ties(double x, double y)
{
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

DecayPrediction predict_decay(const ModelParams& params, DecayCase which)
{
    const double lam = params.lambda;
    const double sigma = params.alpha / (2.0 - params.alpha);
    DecayPrediction out;

    if (which == DecayCase::I) {
        if (!(lam < linear_rate(params)) || ties(lam, linear_rate(params))) {
            std::ostringstream msg;
            msg << "case I needs lambda < (n-alpha)/(2-alpha) = " << linear_rate(params)
                << ", got " << lam;
            throw CaseIRangeError(msg.str());
        }
        out.region = DecayRegion::CaseI_Rate;
        out.mu = lam;
        out.l2_mu = lam - sigma;
        out.figure_mu = lam;
        return out;
    }

    const double m1 = mu_one(params);
    const double m2 = mu_two(params.p);
    const double ps = p_subc(params.n, params.alpha);
    const int side = ties(params.p, ps) ? 0 : (params.p > ps ? 1 : -1);

    if (side > 0) {
        switch (compare(lam, m1)) {
        case -1: out.region = DecayRegion::II_Branch1; out.mu = lam; break;
        case 0: out.region = DecayRegion::II_Branch2; out.mu = lam; out.log_power = 1; break;
        default: out.region = DecayRegion::II_Branch4; out.mu = m1; break;
        }
    } else if (side == 0) {
        switch (compare(lam, m2)) {
        case -1: out.region = DecayRegion::II_Branch1; out.mu = lam; break;
        case 0: out.region = DecayRegion::II_Branch3; out.mu = lam; out.log_power = 2; break;
        default: out.region = DecayRegion::II_Branch5; out.mu = m2; out.log_power = 1; break;
        }
    } else {
        switch (compare(lam, m2)) {
        case -1: out.region = DecayRegion::II_Branch1; out.mu = lam; break;
        case 0: out.region = DecayRegion::II_Branch2; out.mu = lam; out.log_power = 1; break;
        default: out.region = DecayRegion::II_Branch6; out.mu = m2; break;
        }
    }
    out.l2_mu = out.mu - sigma;

    const double lin = linear_rate(params);
    const bool above_fujita = params.p > p_fujita(params.n - params.alpha)
                              && !ties(params.p, p_fujita(params.n - params.alpha));
    out.saturated = (above_fujita && compare(lam, lin) >= 0) || m1 <= 0.0;
    out.figure_mu = above_fujita ? std::min(lam, lin) : out.mu;
    return out;
}

FigureRegion figure_region(const ModelParams& params)
{
    const bool above_fujita = params.p > p_fujita(params.n - params.alpha)
                              && !ties(params.p, p_fujita(params.n - params.alpha));
    if (above_fujita)
        return compare(params.lambda, linear_rate(params)) < 0 ? FigureRegion::Gray : FigureRegion::Saturated;
    const auto pred = predict_decay(params, DecayCase::II);
    switch (pred.region) {
    case DecayRegion::II_Branch2:
        return params.p > p_subc(params.n, params.alpha) ? FigureRegion::BlueCurve : FigureRegion::RedCurve;
    case DecayRegion::II_Branch3: return FigureRegion::Yellow;
    case DecayRegion::II_Branch4: return FigureRegion::BlueRegion;
    case DecayRegion::II_Branch5: return FigureRegion::GreenLine;
    case DecayRegion::II_Branch6: return FigureRegion::RedRegion;
    default: return FigureRegion::Gray;
    }
}

std::string to_string(DecayRegion region)
{
    switch (region) {
    case DecayRegion::CaseI_Rate: return "CaseI_Rate";
    case DecayRegion::II_Branch1: return "II_Branch1";
    case DecayRegion::II_Branch2: return "II_Branch2";
    case DecayRegion::II_Branch3: return "II_Branch3";
    case DecayRegion::II_Branch4: return "II_Branch4";
    case DecayRegion::II_Branch5: return "II_Branch5";
    case DecayRegion::II_Branch6: return "II_Branch6";
    }
    return "?";
}

std::string to_string(FigureRegion region)
{
    switch (region) {
    case FigureRegion::Gray: return "Gray";
    case FigureRegion::BlueCurve: return "BlueCurve";
    case FigureRegion::RedCurve: return "RedCurve";
    case FigureRegion::Yellow: return "Yellow";
    case FigureRegion::BlueRegion: return "BlueRegion";
    case FigureRegion::GreenLine: return "GreenLine";
    case FigureRegion::RedRegion: return "RedRegion";
    case FigureRegion::Saturated: return "Saturated";
    }
    return "?";
}

Growth badterm_growth(const ModelParams& params)
{
    const auto pred = predict_decay(params, DecayCase::II);
    const double lam = params.lambda;
    switch (pred.region) {
    case DecayRegion::II_Branch2: return {0.0, 1};
    case DecayRegion::II_Branch3: return {0.0, 2};
    case DecayRegion::II_Branch4: return {lam - mu_one(params), 0};
    case DecayRegion::II_Branch5: return {lam - mu_two(params.p), 1};
    case DecayRegion::II_Branch6: return {lam - mu_two(params.p), 0};
    default: return {0.0, 0};
    }
}

double badterm_quadrature(const ModelParams& params, double t0, double t)
{
    params.validate();
    if (!(t0 > 0.0) || !(t >= 0.0)) throw DomainError("badterm_quadrature needs t0 > 0 and t >= 0");
    const double q = (params.p + 1.0) / (params.p - 1.0);
    const double al = params.alpha;
    const double lam = params.lambda;
    const int n = params.n;

    // Far-field integrand in r is r^{e}: a^q ~ r^{-αq}, Θ ~ r^{2-α}.
    const double e = (n - 1) - al * q + (2.0 - al) * (lam - q);
    if (e >= -1.0) return std::numeric_limits<double>::infinity();

    const double r_in = params.domain.is_exterior() ? params.domain.r0 : 0.0;
    const double omega = sphere_area(n);

    auto spatial = [&](double s) {
        auto f = [&](double r) {
            const double theta = t0 + s + std::pow(bracket(r), 2.0 - al);
            const double rn = (n == 1) ? 1.0 : std::pow(r, n - 1);
            return std::pow(damping_at(params, r), q) * std::pow(theta, lam - q) * rn;
        };
        const double r1 = r_in + 1.0;
        const double scale = std::pow(t0 + s, 1.0 / (2.0 - al));
        const double r_far = std::max(r1, scale) * 1e4;
        double acc = simpson(f, r_in, r1, 200);
        acc += simpson([&](double x) { const double r = std::exp(x); return f(r) * r; },
                       std::log(r1), std::log(r_far), 3000);
        acc += f(r_far) * r_far / (-(e + 1.0));
        return omega * acc;
    };

    if (t == 0.0) return 0.0;
    return simpson([&](double y) { const double s = std::exp(y) - t0; return spatial(std::max(s, 0.0)) * std::exp(y); },
                   std::log(t0), std::log(t0 + t), 400);
}

} // namespace dampwave

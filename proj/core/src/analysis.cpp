#include "spinpair/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinpair/errors.hpp"

namespace spinpair {

std::vector<Peak> find_peaks(const std::vector<double>& times, const std::vector<double>& values,
                             double min_prominence) {
    std::vector<Peak> peaks;
    const std::size_t n = values.size();
    if (n < 3 || times.size() != n) return peaks;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
        if (values[i] - std::max(values[i - 1], values[i + 1]) < min_prominence) continue;
        // Parabola through the three samples around the discrete maximum.
        const double y0 = values[i - 1], y1 = values[i], y2 = values[i + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        double t = times[i];
        double h = y1;
        if (denom < 0.0) {
            const double shift = 0.5 * (y0 - y2) / denom;
            if (std::abs(shift) <= 1.0) {
                const double dt = times[i + 1] - times[i];
                t = times[i] + shift * dt;
                h = y1 - 0.25 * (y0 - y2) * shift;
            }
        }
        peaks.push_back({t, h});
    }
    return peaks;
}

std::optional<double> mean_peak_spacing(const std::vector<Peak>& peaks) {
    if (peaks.size() < 3) return std::nullopt;
    return (peaks.back().t - peaks.front().t) / double(peaks.size() - 1);
}

namespace {

struct LineFit {
    double slope = 0.0;
    double rms = 0.0;
};

LineFit fit_log_line(const std::vector<Peak>& peaks, std::size_t first) {
    const std::size_t n = peaks.size() - first;
    double st = 0.0, sy = 0.0;
    for (std::size_t i = first; i < peaks.size(); ++i) {
        st += peaks[i].t;
        sy += std::log(peaks[i].height);
    }
    const double mt = st / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = first; i < peaks.size(); ++i) {
        const double dx = peaks[i].t - mt;
        sxx += dx * dx;
        sxy += dx * (std::log(peaks[i].height) - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = first; i < peaks.size(); ++i) {
        const double r = std::log(peaks[i].height) - (my + fit.slope * (peaks[i].t - mt));
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

}  // namespace

std::optional<EnvelopeFit> fit_envelope_rate(const std::vector<Peak>& peaks_in,
                                             double floor_abs) {
    std::vector<Peak> peaks;
    double tallest = 0.0;
    for (const Peak& p : peaks_in) tallest = std::max(tallest, p.height);
    const double floor = std::max(1e-10 * tallest, floor_abs);
    for (const Peak& p : peaks_in)
        if (p.height > floor && p.height > 0.0) peaks.push_back(p);
    if (peaks.size() < 3) return std::nullopt;

    std::size_t first = 0;
    LineFit fit = fit_log_line(peaks, first);
    while (peaks.size() - first > 3 && fit.rms > 1e-3) {
        ++first;
        fit = fit_log_line(peaks, first);
    }

    EnvelopeFit out;
    out.rate = -fit.slope;
    out.peaks_used = peaks.size() - first;
    out.rms_residual = fit.rms;
    return out;
}

EventReport detect_events(const std::vector<CorrelationSample>& series, double tol,
                          std::optional<double> steady_min_hs) {
    EventReport report;
    if (series.size() < 3) return report;

    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].t <= series[i - 1].t)
            throw ConfigError("detect_events requires strictly increasing sample times");

    // Sudden death: start of the final run of concurrence <= tol that
    // extends to the end of the series.
    const std::size_t n = series.size();
    if (series[n - 1].concurrence <= tol) {
        std::size_t start = n - 1;
        while (start > 0 && series[start - 1].concurrence <= tol) --start;
        report.sudden_death_time = series[start].t;
    }

    // Revivals: intervals of live concurrence preceded by a dead interval.
    bool seen_dead = false;
    std::optional<double> open_start;
    for (std::size_t i = 0; i < n; ++i) {
        const bool alive = series[i].concurrence > tol;
        if (alive && seen_dead && !open_start) open_start = series[i].t;
        if (!alive) {
            if (open_start) {
                report.revival_intervals.emplace_back(*open_start, series[i - 1].t);
                open_start.reset();
            }
            seen_dead = true;
        }
    }
    if (open_start) report.revival_intervals.emplace_back(*open_start, series[n - 1].t);

    // Oscillation structure from the min_hs column.
    std::vector<double> times(n), signal(n);
    double lo = series[0].min_hs, hi = series[0].min_hs;
    for (std::size_t i = 0; i < n; ++i) {
        times[i] = series[i].t;
        signal[i] = series[i].min_hs;
        lo = std::min(lo, signal[i]);
        hi = std::max(hi, signal[i]);
    }
    const double range = hi - lo;
    if (range <= 1e-12 * std::max(1.0, std::abs(hi))) return report;  // flat signal

    auto maxima = find_peaks(times, signal, 1e-8 * range);
    // Strong transient harmonics can split early oscillation maxima in two;
    // drop leading peaks until the spacings settle to within 5%.
    std::size_t lead = 0;
    while (maxima.size() - lead > 3) {
        double mn = std::numeric_limits<double>::infinity(), mx = 0.0, sum = 0.0;
        for (std::size_t i = lead + 1; i < maxima.size(); ++i) {
            const double s = maxima[i].t - maxima[i - 1].t;
            mn = std::min(mn, s);
            mx = std::max(mx, s);
            sum += s;
        }
        const double mean = sum / double(maxima.size() - lead - 1);
        if ((mx - mn) <= 0.05 * mean) break;
        ++lead;
    }
    if (maxima.size() - lead >= 3)
        report.period_estimate =
            (maxima.back().t - maxima[lead].t) / double(maxima.size() - 1 - lead);

    const double steady = steady_min_hs ? *steady_min_hs : signal.back();
    std::vector<double> deviation(n);
    for (std::size_t i = 0; i < n; ++i) deviation[i] = std::abs(signal[i] - steady);

    // A tail-estimated steady value is only good to the residual oscillation
    // there; peaks must clear that uncertainty by enough to keep their log
    // heights clean (corrupted trailing peaks cannot be trimmed away).
    double floor_abs = 0.0;
    if (!steady_min_hs) {
        const std::size_t tail = std::max<std::size_t>(2, n / 20);
        for (std::size_t i = n - tail; i < n; ++i) floor_abs = std::max(floor_abs, deviation[i]);
        floor_abs *= 1e3;
    }
    if (const auto fit = fit_envelope_rate(find_peaks(times, deviation), floor_abs))
        report.envelope_rate = fit->rate;

    return report;
}

}  // namespace spinpair

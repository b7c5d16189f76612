#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spinpair/measures.hpp"

namespace spinpair {

struct Peak {
    double t = 0.0;
    double height = 0.0;
};

/// Interior local maxima of a uniformly sampled signal, refined by parabolic
/// interpolation through the three samples around each discrete maximum.
/// Maxima rising less than `min_prominence` above their neighbors are
/// treated as noise.
std::vector<Peak> find_peaks(const std::vector<double>& times, const std::vector<double>& values,
                             double min_prominence = 0.0);

/// Mean spacing of successive peaks (needs >= 3 peaks).
std::optional<double> mean_peak_spacing(const std::vector<Peak>& peaks);

/// Exponential decay rate of a peak envelope: least-squares log-linear fit
/// of peak height against time. Peaks below max(1e-10 of the tallest,
/// `floor_abs`) are noise and dropped; leading peaks are trimmed until the
/// RMS log-residual falls under 1e-3 (never below 3 peaks), which removes
/// the bias of transient harmonic content while leaving clean exponential
/// envelopes untouched.
struct EnvelopeFit {
    double rate = 0.0;       // signal decays as exp(-rate * t)
    std::size_t peaks_used = 0;
    double rms_residual = 0.0;
};

std::optional<EnvelopeFit> fit_envelope_rate(const std::vector<Peak>& peaks,
                                             double floor_abs = 0.0);

/// Trajectory events: entanglement sudden death and revivals from the
/// concurrence column, oscillation period from the spacing of min_hs maxima,
/// envelope rate from the decay of |min_hs - steady| peaks.
struct EventReport {
    std::optional<double> sudden_death_time;
    std::vector<std::pair<double, double>> revival_intervals;
    std::optional<double> period_estimate;
    std::optional<double> envelope_rate;
};

/// `tol` separates "zero" concurrence from live concurrence. The steady
/// min_hs value is taken from `steady_min_hs` when provided, otherwise
/// estimated from the series tail. Requires uniform sampling with at least
/// 32 points per oscillation period (caller's responsibility); fewer than 3
/// detected peaks leaves period/envelope absent.
EventReport detect_events(const std::vector<CorrelationSample>& series, double tol,
                          std::optional<double> steady_min_hs = std::nullopt);

}  // namespace spinpair

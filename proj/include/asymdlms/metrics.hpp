#pragma once

#include <span>
#include <string>
#include <vector>

namespace asymdlms {

// MSD reported below this linear floor becomes the sentinel so CSV stays numeric.
inline constexpr double kMsdLinearFloor = 1e-300;
inline constexpr double kMsdDbSentinel = -3000.0;

// Network MSD above this level marks a trial diverged.
inline constexpr double kDivergenceDb = 100.0;

// (1/N) * sum over nodes of squared deviation from the true taps.
double network_msd(std::span<const double> estimates, std::span<const double> truth);

double to_db(double linear_msd);

struct MsdCurve {
  std::string algorithm;
  std::vector<double> values_db;  // one entry per iteration, post-combination
  int trials = 0;                 // trials averaged (diverged ones excluded)
  int diverged_trials = 0;
};

// Neumaier compensated accumulator; keeps trial averaging bit-stable.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;
  void add(double value);
  double value() const { return sum + compensation; }
};

// Per-iteration linear mean over trial curves, folded in ascending trial
// order with compensated summation.
std::vector<double> average_linear_curves(const std::vector<std::vector<double>>& curves);

// Per-trial steady state: mean of the last max(1, n/10) linear values, in dB.
double steady_state_db(std::span<const double> linear_msd);

// Curve-level final level: mean of the last max(1, n/10) dB values.
double curve_final_db(std::span<const double> values_db);

// CSV with header iteration,algorithm,msd_db; rows iteration-major, curves
// in the given order.
std::string curves_to_csv(const std::vector<MsdCurve>& curves);

struct ComplexityRow {
  std::string algorithm;
  std::string recursion_label;
  long multiplications = 0;
  long additions = 0;
  long sign_ops = 0;
  long exp_ops = 0;
  long abs_ops = 0;
};

// Closed-form per-iteration operation counts for the five diffusion
// algorithms with published count formulas, adaptation and combination rows.
std::vector<ComplexityRow> complexity_table(int taps, int nodes);
std::string complexity_report(int taps, int nodes);  // aligned plain text
std::string complexity_csv(int taps, int nodes);

}  // namespace asymdlms

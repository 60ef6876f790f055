#include "asymdlms/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace asymdlms {

double network_msd(std::span<const double> estimates, std::span<const double> truth) {
  const std::size_t taps = truth.size();
  if (taps == 0 || estimates.size() % taps != 0)
    throw std::invalid_argument("estimates size must be a multiple of the tap count");
  const std::size_t nodes = estimates.size() / taps;
  double acc = 0.0;
  for (std::size_t n = 0; n < nodes; ++n) {
    const double* w = estimates.data() + n * taps;
    for (std::size_t j = 0; j < taps; ++j) {
      const double d = truth[j] - w[j];
      acc += d * d;
    }
  }
  return acc / static_cast<double>(nodes);
}

double to_db(double linear_msd) {
  if (!(linear_msd >= kMsdLinearFloor)) {
    if (linear_msd < 0.0) throw std::invalid_argument("MSD must be nonnegative");
    return kMsdDbSentinel;
  }
  return 10.0 * std::log10(linear_msd);
}

void CompensatedSum::add(double value) {
  const double t = sum + value;
  if (std::abs(sum) >= std::abs(value))
    compensation += (sum - t) + value;
  else
    compensation += (value - t) + sum;
  sum = t;
}

std::vector<double> average_linear_curves(const std::vector<std::vector<double>>& curves) {
  if (curves.empty()) return {};
  const std::size_t len = curves.front().size();
  std::vector<CompensatedSum> sums(len);
  for (const auto& curve : curves) {
    if (curve.size() != len)
      throw std::invalid_argument("trial curves must have equal length");
    for (std::size_t i = 0; i < len; ++i) sums[i].add(curve[i]);
  }
  std::vector<double> mean(len);
  for (std::size_t i = 0; i < len; ++i)
    mean[i] = sums[i].value() / static_cast<double>(curves.size());
  return mean;
}

namespace {

std::size_t tail_window(std::size_t n) {
  const std::size_t w = n / 10;
  return w == 0 ? 1 : w;
}

}  // namespace

double steady_state_db(std::span<const double> linear_msd) {
  if (linear_msd.empty()) throw std::invalid_argument("empty curve");
  const std::size_t w = tail_window(linear_msd.size());
  CompensatedSum acc;
  for (std::size_t i = linear_msd.size() - w; i < linear_msd.size(); ++i)
    acc.add(linear_msd[i]);
  return to_db(acc.value() / static_cast<double>(w));
}

double curve_final_db(std::span<const double> values_db) {
  if (values_db.empty()) throw std::invalid_argument("empty curve");
  const std::size_t w = tail_window(values_db.size());
  CompensatedSum acc;
  for (std::size_t i = values_db.size() - w; i < values_db.size(); ++i)
    acc.add(values_db[i]);
  return acc.value() / static_cast<double>(w);
}

std::string curves_to_csv(const std::vector<MsdCurve>& curves) {
  std::string out = "iteration,algorithm,msd_db\n";
  if (curves.empty()) return out;
  const std::size_t len = curves.front().values_db.size();
  for (const auto& c : curves)
    if (c.values_db.size() != len)
      throw std::invalid_argument("curves must have equal length");
  char line[128];
  for (std::size_t i = 0; i < len; ++i) {
    for (const auto& c : curves) {
      std::snprintf(line, sizeof(line), "%zu,%s,%.6f\n", i, c.algorithm.c_str(),
                    c.values_db[i]);
      out += line;
    }
  }
  return out;
}

std::vector<ComplexityRow> complexity_table(int taps, int nodes) {
  if (taps < 1 || nodes < 1) throw std::invalid_argument("taps and nodes must be positive");
  const long M = taps;
  const long N = nodes;
  const long adapt_adds = (3 * M - 1) * N;
  const long comb_mults = N * M;
  const long comb_adds = (N - 1) * M;
  std::vector<ComplexityRow> rows;
  auto combination = [&](const char* name) {
    rows.push_back({name, "combination", comb_mults, comb_adds, 0, 0, 0});
  };
  rows.push_back({"DSELMS", "adaptation", (2 * M + 1) * N + M, adapt_adds, N, 0, 0});
  combination("DSELMS");
  rows.push_back({"DLLAD", "adaptation", 2 * M * N + M, adapt_adds, 0, 0, N});
  combination("DLLAD");
  rows.push_back({"DLLCLMS", "adaptation (I)", (2 * M + 2) * N + M, adapt_adds, N, 0, 0});
  rows.push_back({"DLLCLMS", "adaptation (II)", (2 * M + 2) * N + M, adapt_adds, N, 0, 0});
  combination("DLLCLMS");
  rows.push_back({"DQQCLMS", "adaptation (I)", (2 * M + 3) * N + M, adapt_adds, N, 0, 0});
  rows.push_back({"DQQCLMS", "adaptation (II)", (2 * M + 3) * N + M, adapt_adds, N, 0, 0});
  combination("DQQCLMS");
  rows.push_back({"DLECLMS", "adaptation", (2 * M + 5) * N + M, 3 * M * N, 0, N, 0});
  combination("DLECLMS");
  return rows;
}

std::string complexity_report(int taps, int nodes) {
  const auto rows = complexity_table(taps, nodes);
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "per-iteration operation counts (M=%d, N=%d)\n",
                taps, nodes);
  out += line;
  std::snprintf(line, sizeof(line), "%-9s %-16s %8s %8s %6s %6s %6s\n", "algorithm",
                "recursion", "mult", "add", "sign", "exp", "abs");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-9s %-16s %8ld %8ld %6ld %6ld %6ld\n",
                  r.algorithm.c_str(), r.recursion_label.c_str(), r.multiplications,
                  r.additions, r.sign_ops, r.exp_ops, r.abs_ops);
    out += line;
  }
  return out;
}

std::string complexity_csv(int taps, int nodes) {
  const auto rows = complexity_table(taps, nodes);
  std::string out = "algorithm,recursion,multiplications,additions,sign_ops,exp_ops,abs_ops\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%s,%ld,%ld,%ld,%ld,%ld\n", r.algorithm.c_str(),
                  r.recursion_label.c_str(), r.multiplications, r.additions, r.sign_ops,
                  r.exp_ops, r.abs_ops);
    out += line;
  }
  return out;
}

}  // namespace asymdlms

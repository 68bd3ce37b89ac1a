#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "knot/curve.hpp"
#include "knot/energy.hpp"
#include "knot/mollify.hpp"

namespace knot {

inline constexpr const char* kToolVersion = "0.1.0";

// Flat key = value configuration; every consumed key is echoed with the
// value actually used (including defaults) so no knob stays hidden.
class ExperimentConfig {
 public:
  ExperimentConfig() = default;

  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key, double def) const;
  int get_int(const std::string& key, int def) const;
  bool get_bool(const std::string& key, bool def) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::string& def) const;
  std::vector<int> get_int_list(const std::string& key,
                                const std::string& def) const;

  // canonical "key = value" lines of everything consumed so far
  std::string resolved_text() const;
  // FNV-1a hash of the canonical resolved text, as fixed-width hex
  std::string hash() const;

  // round-trip: parse(resolved_text()) reproduces the resolved pairs
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

// curve built from the curve.* keys (kind, n, normalize, family parameters)
ClosedCurve make_curve(const ExperimentConfig& cfg);

// CSV sample file with columns t, x1..xd (uniform t_j = j/N)
ClosedCurve load_curve_samples(const std::filesystem::path& path);
void save_curve_samples(const ClosedCurve& curve,
                        const std::filesystem::path& path,
                        const std::string& provenance);

struct ReparamConvergeRow {
  double epsilon = 0.0;
  double sup_distance = 0.0;
  double w12_derivative_distance = 0.0;
};

// Theorem-style sweep: mollify, rescale to unit length, re-parametrize by
// arc length keeping the base point, then measure distances to the original.
std::vector<ReparamConvergeRow> reparam_converge(
    const ClosedCurve& curve, const std::vector<double>& eps_list, int grid);

std::vector<MollifySweepRow> mollify_sweep(const ClosedCurve& curve,
                                           const std::vector<double>& eps_list,
                                           bool with_energies,
                                           const QuadratureSpec& spec);

// Runs the experiment named by exp.kind and writes its CSV artifacts;
// returns the list of files written.
std::vector<std::filesystem::path> run(const ExperimentConfig& cfg,
                                       const std::filesystem::path& out_dir);

}  // namespace knot

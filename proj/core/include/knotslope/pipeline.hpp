#pragma once

// Command implementations behind the knotslope tool: per-sample slope
// records, scans over M, A-polynomial reports and the two-route verification.
// Each run_* writes its report to `out`, diagnostics to `err`, and returns the
// process exit code (0 success, 1 verification failure, 2 usage/parse error).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "knotslope/bilaurent.hpp"
#include "knotslope/error.hpp"
#include "knotslope/presentation.hpp"
#include "knotslope/slope.hpp"

namespace knotslope {

enum class OutputFormat { kJson, kCsv };

/// M = r e^{i theta}, r in [r0, r1], theta in [t0, t1].
struct Arc {
  double r0 = 1.1;
  double r1 = 2.0;
  double t0 = 0.1;
  double t1 = 1.0;
};

struct ScanConfig {
  /// Explicit samples; when empty, `count` points are drawn from `arc`.
  std::vector<std::complex<double>> samples;
  int count = 25;
  Arc arc;
  std::uint64_t seed = 1;
  /// Verification tolerance (relative deviation).
  double tol = 1e-6;
  OutputFormat format = OutputFormat::kJson;
  bool with_reducible = false;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws Error(kUsage) for count < 1, an empty or inverted arc, or tol
  /// outside (0, 1).
  void validate() const;
  /// Explicit samples, or the seeded draw from the arc.
  std::vector<std::complex<double>> resolve_samples() const;
};

struct SlopeRecord {
  std::size_t sample = 0;
  int branch = 0;
  std::complex<double> m;  ///< the Riley parameter M
  std::complex<double> t;
  /// L read on the eigenvector of rho(meridian) with eigenvalue M.
  std::complex<double> longitude_eigenvalue;
  std::complex<double> x;  ///< tr rho(meridian)
  std::optional<std::complex<double>> slope;  ///< nullopt: infinity or failure
  bool infinite = false;
  Verdict verdict = Verdict::kDegenerate;
  std::string error;
  double relator_residual = 0.0;
  double commutator_residual = 0.0;
  double coordinate_residual = 0.0;
};

/// One record per irreducible Riley root at M, in root order.
std::vector<SlopeRecord> slope_records(std::shared_ptr<const KnotPresentation> pres,
                                       std::complex<double> m);

struct BranchSummary {
  int branch = 0;
  int count = 0;
  std::complex<double> mean;
  double variance = 0.0;
  double max_deviation = 0.0;
  double min_real = 0.0;
  double max_real = 0.0;
};

struct ScanResult {
  std::vector<SlopeRecord> records;  ///< ordered by sample, then branch
  std::vector<BranchSummary> summary;
};

/// Samples in parallel; branches are matched to the previous sample's
/// roots by nearest t.
ScanResult scan(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config);

struct VerifyRecord {
  std::size_t sample = 0;
  std::complex<double> m;
  std::complex<double> longitude_eigenvalue;
  std::optional<std::complex<double>> fox;    ///< nullopt: infinity
  std::optional<std::complex<double>> gauss;  ///< nullopt: infinity
  double deviation = 0.0;
  double apoly_residual = 0.0;  ///< |A(L, M)| / term magnitude
  std::string error;
};

struct VerifyResult {
  BiLaurent polynomial;
  std::vector<VerifyRecord> records;
  double max_deviation = 0.0;
  double max_apoly_residual = 0.0;
  /// Set for the bundled figure-eight: which trace coordinate satisfies the
  /// curve and its worst residual.
  std::optional<std::string> curve_coordinate;
  double curve_residual = 0.0;
  bool passed = false;
};

/// Uses `polynomial` when given, otherwise the computed A-polynomial.
VerifyResult verify(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config,
                    const std::optional<BiLaurent>& polynomial = std::nullopt);

int run_slope(std::shared_ptr<const KnotPresentation> pres,
              const std::vector<std::complex<double>>& ms, OutputFormat format,
              std::ostream& out, std::ostream& err);
int run_scan(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config,
             std::ostream& out, std::ostream& err);
int run_apoly(const KnotPresentation& pres, const ScanConfig& config, std::ostream& out,
              std::ostream& err);
int run_verify(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config,
               const std::optional<BiLaurent>& polynomial, std::ostream& out,
               std::ostream& err);
int run_presentation_check(const KnotPresentation& pres, std::ostream& out,
                           std::ostream& err);

/// 2 for parse, usage and invalid-presentation errors, 1 otherwise.
int exit_code_for(const Error& e);

}  // namespace knotslope

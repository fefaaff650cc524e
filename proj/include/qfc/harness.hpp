#pragma once

// End-to-end pipeline runs and bound-verification experiments.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfc/boxcount.hpp"
#include "qfc/decomp.hpp"

namespace qfc {

// ---------------------------------------------------------------------------
// Pipeline: standardize -> choose_T -> pigeonhole -> decompose -> per-z solve
// -> recompose -> map back to the original box, compared against count_exact.
// ---------------------------------------------------------------------------

struct ZRow {
  BigInt z, n;
  std::uint64_t solutions;
};

struct PipelineReport {
  StandardInstance standard;
  std::optional<Decomposition> decomposition;  // Norm kind only
  BigInt z_lo, z_hi;
  std::vector<ZRow> rows;                      // only z values with solutions
  std::uint64_t z_count = 0;
  std::vector<Point> recomposed;               // original (x, y), sorted
  std::uint64_t exact_count = 0;
  bool match = false;
};

// Throws PipelineMismatch when the recomposed set differs from count_exact.
PipelineReport run_pipeline(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p, const Box& box);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

struct SweepSpec {
  std::vector<std::uint64_t> primes;
  std::vector<std::int64_t> m_schedule;
  std::int64_t samples = 1;
  std::vector<std::int64_t> form{1, 0, 0, 0, 0, 0};
  std::uint64_t seed = 1;
  double estimate_c = 1.0;
  bool timing = false;
};

// key = value lines; '#' starts a comment. Throws BadConfig.
SweepSpec parse_sweep_config(std::istream& in);
SweepSpec parse_sweep_config_file(const std::string& path);

struct ExperimentRecord {
  std::uint64_t p = 0;
  std::int64_t M = 0;
  BigInt K, L, lambda;             // sample attaining the maximum
  std::vector<std::int64_t> form;
  std::uint64_t count = 0;         // maximum over irreducible samples
  std::uint64_t trivial_bound = 0; // 2M
  double estimate_bound = 0;       // M^2/p + C sqrt(p) log^2 p
  double theorem_shape = 0;        // M^{4/3} p^{-1/3} + 1
  Regime regime = Regime::LargeM;
  std::uint64_t seed = 0;
  double wall_time_ms = 0;
  double mean_count = 0;
  std::int64_t samples = 0;        // irreducible samples counted
  std::int64_t skipped = 0;        // reducible or out-of-regime samples
  std::string error;
};

inline constexpr const char* kSchemaLine = "#schema=1";
std::string csv_header();
std::string csv_row(const ExperimentRecord& r);

// One record per (p, M) grid cell in grid order; cells run in parallel.
std::vector<ExperimentRecord> sweep(const SweepSpec& spec);
std::vector<ExperimentRecord> sweep_serial(const SweepSpec& spec);
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_csv(std::istream& in);

struct ExponentFit {
  double slope;
  double residual;  // root-mean-square residual in log space
};

// Least-squares slope of log(count) against log(M). Needs >= 3 records with count >= 1
// and at least two distinct M.
ExponentFit fit_exponent(const std::vector<ExperimentRecord>& records);

struct ParabolaRow {
  std::int64_t M;
  std::uint64_t count;
  double ratio;  // count / sqrt(M)
};

// y = x^2 (mod p) on [1, M]^2 for each M.
std::vector<ParabolaRow> parabola_sanity(const std::vector<std::int64_t>& m_schedule, const PrimeModulus& p);

}  // namespace qfc

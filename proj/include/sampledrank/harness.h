#ifndef SAMPLEDRANK_HARNESS_H_
#define SAMPLEDRANK_HARNESS_H_

// Evaluation harness behind the `sampledrank` command line tool: dataset
// ingestion, the exact / expected / simulated evaluations, sweeps, curves,
// consistency reports and rendering to CSV or JSON.
//
// Input format, one record per line:
//
//   algorithm,instance_id,n,ranks
//
// where ranks is a ';'-separated list of 1-based positions, e.g.
// "C,x2,10000,2". Blank lines and lines starting with '#' are skipped; an
// optional header line equal to the field list above is allowed.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sampledrank/consistency.h"
#include "sampledrank/metrics.h"
#include "sampledrank/rank_sampling.h"

namespace sampledrank {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitReproductionMismatch = 2;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ValidationError naming `source` and the offending line.
EvalDataset ParseDataset(std::istream& in, const std::string& source);
EvalDataset Ingest(const std::filesystem::path& path);

// Three algorithms over five single-relevant-item instances, n = 10000.
EvalDataset RunningExample();

enum class Mode { kExact, kExpected, kSimulated };
enum class Format { kCsv, kJson };

std::string_view ToString(Mode mode);
Format ParseFormat(std::string_view text);

struct MetricReport {
  std::string algorithm;
  MetricSpec spec;
  Mode mode;
  std::optional<std::int64_t> samples;
  std::optional<Replacement> replacement;
  std::optional<std::int64_t> repetitions;
  double mean;
  std::optional<double> std;  // simulated mode only
};

std::vector<MetricReport> ExactReports(const EvalDataset& dataset,
                                       const std::vector<MetricSpec>& specs);
std::vector<MetricReport> ExpectedReports(const EvalDataset& dataset,
                                          const std::vector<MetricSpec>& specs,
                                          const SamplingScheme& scheme);
std::vector<MetricReport> SimulatedReports(
    const EvalDataset& dataset, const std::vector<MetricSpec>& specs,
    const SamplingScheme& scheme, std::int64_t repetitions, std::uint64_t seed,
    int threads = 0);

// Columns: algorithm,metric,k,mode,m,scheme,reps,mean,std. Missing values are
// empty fields (null in JSON); numbers carry 6 decimals.
std::string RenderReports(const std::vector<MetricReport>& reports,
                          Format format);

// Columns: m,algorithm,metric,k,scheme,mean.
std::string RenderSweeps(const std::vector<SweepResult>& sweeps, Format format);

struct CurvePoint {
  MetricSpec spec;
  Rank rank;
  Mode mode;  // exact or expected
  std::optional<std::int64_t> samples;
  std::optional<Replacement> replacement;
  double value;
};

// Exact curve per spec over ranks [first, last] in steps of `step`, then one
// expected curve per (spec, m).
std::vector<CurvePoint> MetricCurves(const std::vector<MetricSpec>& specs,
                                     Rank catalog_size, Rank first, Rank last,
                                     Rank step,
                                     const std::vector<std::int64_t>& samples,
                                     Replacement replacement, int threads = 0);

// Columns: metric,k,r,mode,m,scheme,value.
std::string RenderCurve(const std::vector<CurvePoint>& points, Format format);

// Human-readable table, or JSON. Crossovers are appended when given.
std::string RenderComparison(const ComparisonReport& report,
                             const std::vector<Crossover>& crossovers,
                             bool json);

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> input;
  std::vector<MetricSpec> specs;
  std::optional<std::int64_t> samples;
  std::vector<std::int64_t> sample_list;
  std::optional<Replacement> replacement;
  std::int64_t repetitions = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<Format> format;
  std::optional<std::filesystem::path> output;
  int threads = 0;
  // curve only
  Rank catalog_size = 10000;
  Rank first_rank = 1;
  std::optional<Rank> last_rank;
  Rank rank_step = 1;
};

// Runs one command, writing its primary output to config.output (or `out`
// when unset) and diagnostics to `err`. Returns an exit code.
int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err);

// Recomputes both running-example tables and the figure data, writing CSVs
// into `directory`. Returns kExitReproductionMismatch if an exact cell
// differs from the reference table at 3 decimals or an expected cell is more
// than 0.02 away from the reference sampled table.
int ReproducePaper(const std::filesystem::path& directory, std::uint64_t seed,
                   int threads, std::ostream& out);

}  // namespace sampledrank

#endif  // SAMPLEDRANK_HARNESS_H_

#pragma once

// Schema-versioned run report of the realize command, and the data file and
// number formats shared by all commands.

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gor/baselines.hpp"
#include "gor/realize.hpp"

namespace gor::cli {

inline constexpr int kSchemaVersion = 1;

struct CandidateReport {
  std::vector<double> b;                        ///< b_1 ... b_q
  std::vector<double> characteristic;           ///< a, highest power first
  std::vector<Complex> estimated_poles;         ///< roots of b
  std::vector<Complex> poles;                   ///< roots of a
  double misfit_sq = 0.0;
  std::optional<FoncResidual> fonc;
  std::optional<int> hankel_rank;
  std::optional<bool> rank_borderline;
  std::optional<double> sigma_ratio;

  bool operator==(const CandidateReport&) const = default;
};

struct RunReport {
  int schema = kSchemaVersion;
  std::string tool_version;
  std::string input_path;
  std::string input_sha256;
  long N = 0;
  int n = 0;
  int m = 0;
  std::vector<Complex> fixed_poles;
  std::string method;
  std::optional<int> n_affine;
  std::optional<int> n_real;
  std::optional<int> n_infinite;
  std::optional<CandidateReport> global;
  std::vector<CandidateReport> candidates;
  std::vector<std::string> warnings;
  double wall_time_s = 0.0;

  bool operator==(const RunReport&) const = default;
};

CandidateReport candidate_report(const CriticalPoint& cp);
CandidateReport candidate_report(const BaselineResult& br);

nlohmann::json to_json(const RunReport& report);
/// Throws InputError on a document of another schema version.
RunReport report_from_json(const nlohmann::json& doc);

/// One CSV row per candidate (the global one first).
void write_report_csv(std::ostream& out, const RunReport& report);

/// One real per line; blank lines and lines starting with '#' are skipped.
/// Throws InputError on anything else that is not a finite number.
Vector read_data(std::istream& in);
Vector read_data_file(const std::string& path);

/// Seventeen significant digits, one value per line.
void write_data(std::ostream& out, const Vector& values);

/// Shortest text that parses back to the same double.
std::string format_number(double v);
/// "re", or "re+imj" / "re-imj" for a nonreal value.
std::string format_complex(Complex z);

/// Parses "re", "re,im" or the polar form "r@theta" (radians).
Complex parse_pole(const std::string& text);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace gor::cli

#pragma once

// JSON and CSV encodings of generators, reports, signals and trajectories.

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hippo/approx.hpp"
#include "hippo/checks.hpp"
#include "hippo/discretize.hpp"
#include "hippo/operators.hpp"

namespace hippo {

/// Malformed input text; `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

nlohmann::json family_params_json(const Family& family);

/// {family, N, params, time_dependence, F, G}; real generators also carry
/// A = -F and B = G. Matrices are row-major, complex entries as [re, im].
nlohmann::json generator_json(const RealGenerator& gen);
nlohmann::json generator_json(const ComplexGenerator& gen);
nlohmann::json generator_json(const AnyGenerator& gen);

nlohmann::json report_json(const CheckReport& report);

std::string scheme_name(const SchemeSpec& scheme);

/// Rows of a signal file: one column `value` or two columns `t,value`. The
/// header line is optional; blank lines and lines starting with '#' are skipped.
struct SignalTable {
  bool has_time = false;
  std::vector<double> t;
  std::vector<double> value;
};

/// Throws ParseError on malformed rows or when no data rows are present.
SignalTable read_signal_csv(std::istream& in);

void write_signal_csv(std::ostream& out, const Signal& signal);

/// Header k,t,c0,...,c{N-1}; complex states write c0_re,c0_im,...
template <class Scalar>
void write_trajectory_csv(std::ostream& out, const std::vector<CoefState<Scalar>>& states);

/// Header x,truth,approx,abs_err.
void write_reconstruction_csv(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& truth,
                              const Eigen::VectorXd& approx);

}  // namespace hippo

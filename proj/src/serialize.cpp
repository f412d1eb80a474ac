#include "hippo/serialize.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace hippo {

namespace {

nlohmann::json entry(double v) { return v; }
nlohmann::json entry(const std::complex<double>& v) { return nlohmann::json::array({v.real(), v.imag()}); }

template <class Derived>
nlohmann::json matrix_json(const Eigen::MatrixBase<Derived>& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(entry(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Derived>
nlohmann::json vector_json(const Eigen::MatrixBase<Derived>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(entry(v(i)));
  return out;
}

const char* dependence_name(TimeDependence d) {
  switch (d) {
    case TimeDependence::constant:
      return "constant";
    case TimeDependence::inverse_time:
      return "inverse_time";
    case TimeDependence::rotating:
      return "rotating";
  }
  return "";
}

template <class Scalar>
nlohmann::json generator_common(const Generator<Scalar>& gen) {
  return {{"family", std::string(family_name(gen.family))},
          {"N", gen.dim()},
          {"params", family_params_json(gen.family)},
          {"time_dependence", dependence_name(gen.kind)},
          {"F", matrix_json(gen.F)},
          {"G", vector_json(gen.G)}};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

nlohmann::json family_params_json(const Family& family) {
  nlohmann::json p = nlohmann::json::object();
  if (const auto* f = std::get_if<LegT>(&family)) {
    p["theta"] = f->theta;
    p["scaling"] = f->scaling == LegtScaling::lmu ? "lmu" : "orthonormal";
  } else if (const auto* f = std::get_if<LagT>(&family)) {
    p["alpha"] = f->alpha;
    p["beta"] = f->beta;
  } else if (const auto* f = std::get_if<FourT>(&family)) {
    p["theta"] = f->theta;
  } else if (const auto* f = std::get_if<Fru>(&family)) {
    p["theta"] = f->theta;
    p["freqs"] = f->freqs;
  } else if (const auto* f = std::get_if<ChebT>(&family)) {
    p["theta"] = f->theta;
  }
  return p;
}

nlohmann::json generator_json(const RealGenerator& gen) {
  nlohmann::json j = generator_common(gen);
  j["A"] = matrix_json(-gen.F);
  j["B"] = vector_json(gen.G);
  return j;
}

nlohmann::json generator_json(const ComplexGenerator& gen) { return generator_common(gen); }

nlohmann::json generator_json(const AnyGenerator& gen) {
  return std::visit([](const auto& g) { return generator_json(g); }, gen);
}

nlohmann::json report_json(const CheckReport& report) {
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : report.measurements) m[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  nlohmann::json j = {{"name", report.name},
                      {"measurements", m},
                      {"pass", report.pass},
                      {"degenerate", report.degenerate},
                      {"threshold", report.threshold}};
  if (report.fitted) j["fitted"] = {{"slope", report.fitted->slope}, {"intercept", report.fitted->intercept}};
  return j;
}

std::string scheme_name(const SchemeSpec& scheme) {
  std::ostringstream os;
  if (scheme.method == Method::zoh) {
    os << "zoh";
  } else {
    os << "gbt(alpha=" << scheme.alpha << ")";
  }
  switch (scheme.policy) {
    case StepPolicy::fixed:
      os << " dt=" << scheme.dt;
      break;
    case StepPolicy::timestamped:
      os << " timestamped";
      break;
    case StepPolicy::index_based:
      os << " indexed";
      break;
  }
  return os.str();
}

SignalTable read_signal_csv(std::istream& in) {
  SignalTable table;
  std::string line;
  std::size_t lineno = 0;
  int columns = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto fields = split(s);
    double first;
    if (!seen_row && columns == 0 && !parse_double(fields[0], first)) {
      // header
      if (fields.size() == 1 && fields[0] == "value") {
        columns = 1;
      } else if (fields.size() == 2 && fields[0] == "t" && fields[1] == "value") {
        columns = 2;
      } else {
        throw ParseError(lineno, "expected header 'value' or 't,value'");
      }
      continue;
    }
    if (columns == 0) columns = static_cast<int>(fields.size());
    if (columns != 1 && columns != 2) throw ParseError(lineno, "expected one or two columns");
    if (static_cast<int>(fields.size()) != columns)
      throw ParseError(lineno, "expected " + std::to_string(columns) + " fields, found " + std::to_string(fields.size()));
    double vals[2];
    for (int c = 0; c < columns; ++c)
      if (!parse_double(fields[c], vals[c]) || !std::isfinite(vals[c]))
        throw ParseError(lineno, "not a finite number: '" + std::string(fields[c]) + "'");
    if (columns == 2) table.t.push_back(vals[0]);
    table.value.push_back(vals[columns - 1]);
    seen_row = true;
  }
  if (!seen_row) throw ParseError(lineno == 0 ? 1 : lineno, "no data rows");
  table.has_time = columns == 2;
  return table;
}

void write_signal_csv(std::ostream& out, const Signal& signal) {
  out << std::setprecision(17);
  if (signal.is_uniform()) {
    out << "value\n";
    for (double v : signal.values()) out << v << '\n';
  } else {
    out << "t,value\n";
    const std::vector<double> t = signal.times();
    for (std::size_t i = 0; i < t.size(); ++i) out << t[i] << ',' << signal.values()[i] << '\n';
  }
}

template <class Scalar>
void write_trajectory_csv(std::ostream& out, const std::vector<CoefState<Scalar>>& states) {
  constexpr bool complex = !std::is_same_v<Scalar, double>;
  const Eigen::Index N = states.empty() ? 0 : states.front().c.size();
  out << "k,t";
  for (Eigen::Index n = 0; n < N; ++n) {
    if constexpr (complex)
      out << ",c" << n << "_re,c" << n << "_im";
    else
      out << ",c" << n;
  }
  out << '\n' << std::setprecision(17);
  for (const auto& s : states) {
    out << s.k << ',' << s.t;
    for (Eigen::Index n = 0; n < N; ++n) {
      if constexpr (complex)
        out << ',' << s.c(n).real() << ',' << s.c(n).imag();
      else
        out << ',' << s.c(n);
    }
    out << '\n';
  }
}

template void write_trajectory_csv<double>(std::ostream&, const std::vector<CoefState<double>>&);
template void write_trajectory_csv<std::complex<double>>(std::ostream&,
                                                         const std::vector<CoefState<std::complex<double>>>&);

void write_reconstruction_csv(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& truth,
                              const Eigen::VectorXd& approx) {
  if (xs.size() != truth.size() || static_cast<Eigen::Index>(xs.size()) != approx.size())
    throw std::invalid_argument("write_reconstruction_csv: length mismatch");
  out << "x,truth,approx,abs_err\n" << std::setprecision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = approx(static_cast<Eigen::Index>(i));
    out << xs[i] << ',' << truth[i] << ',' << a << ',' << std::abs(truth[i] - a) << '\n';
  }
}

}  // namespace hippo

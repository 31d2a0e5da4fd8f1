#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "gor/errors.hpp"

namespace gor::cli {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

json complex_list(const std::vector<Complex>& zs) {
  json out = json::array();
  for (Complex z : zs) out.push_back(complex_json(z));
  return out;
}

std::vector<Complex> complex_list_from(const json& j) {
  std::vector<Complex> out;
  for (const auto& z : j) out.push_back(complex_from(z));
  return out;
}

json candidate_json(const CandidateReport& c) {
  json j{{"b", c.b},
         {"characteristic_polynomial", c.characteristic},
         {"estimated_poles", complex_list(c.estimated_poles)},
         {"poles", complex_list(c.poles)},
         {"misfit_sq", c.misfit_sq}};
  if (c.fonc) {
    j["fonc"] = json{{"r_b", c.fonc->r_b},
                     {"r_yhat", c.fonc->r_yhat},
                     {"r_lambda", c.fonc->r_lambda},
                     {"r_mu", c.fonc->r_mu}};
  }
  if (c.hankel_rank) j["hankel_rank"] = *c.hankel_rank;
  if (c.rank_borderline) j["rank_borderline"] = *c.rank_borderline;
  if (c.sigma_ratio) j["sigma_ratio"] = *c.sigma_ratio;
  return j;
}

CandidateReport candidate_from(const json& j) {
  CandidateReport c;
  c.b = j.at("b").get<std::vector<double>>();
  c.characteristic = j.at("characteristic_polynomial").get<std::vector<double>>();
  c.estimated_poles = complex_list_from(j.at("estimated_poles"));
  c.poles = complex_list_from(j.at("poles"));
  c.misfit_sq = j.at("misfit_sq").get<double>();
  if (j.contains("fonc")) {
    const json& f = j["fonc"];
    c.fonc = FoncResidual{f.at("r_b").get<double>(), f.at("r_yhat").get<double>(),
                          f.at("r_lambda").get<double>(), f.at("r_mu").get<double>()};
  }
  if (j.contains("hankel_rank")) c.hankel_rank = j["hankel_rank"].get<int>();
  if (j.contains("rank_borderline")) c.rank_borderline = j["rank_borderline"].get<bool>();
  if (j.contains("sigma_ratio")) c.sigma_ratio = j["sigma_ratio"].get<double>();
  return c;
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j[key].get<T>();
}

std::string join_complex(const std::vector<Complex>& zs) {
  std::string out;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (i) out += ' ';
    out += format_complex(zs[i]);
  }
  return out;
}

}  // namespace

CandidateReport candidate_report(const CriticalPoint& cp) {
  CandidateReport c;
  const Vector tail = cp.b.tail();
  c.b.assign(tail.data(), tail.data() + tail.size());
  const Vector& a = cp.a.coeffs();
  c.characteristic.assign(a.data(), a.data() + a.size());
  std::reverse(c.characteristic.begin(), c.characteristic.end());
  c.estimated_poles = poly_roots(cp.b);
  c.poles = cp.poles;
  c.misfit_sq = cp.misfit_sq;
  c.fonc = cp.fonc;
  c.hankel_rank = cp.hankel_rank;
  c.rank_borderline = cp.rank_borderline;
  c.sigma_ratio = cp.sigma_ratio;
  return c;
}

CandidateReport candidate_report(const BaselineResult& br) {
  CandidateReport c;
  const Vector tail = br.estimated_factor.tail();
  c.b.assign(tail.data(), tail.data() + tail.size());
  const Vector& a = br.combined_model.coeffs();
  c.characteristic.assign(a.data(), a.data() + a.size());
  std::reverse(c.characteristic.begin(), c.characteristic.end());
  c.estimated_poles = br.estimated_poles;
  c.poles = poly_roots(br.combined_model);
  c.misfit_sq = br.misfit_sq;
  return c;
}

json to_json(const RunReport& r) {
  json j;
  j["schema"] = r.schema;
  j["tool"] = json{{"name", "gorealize"}, {"version", r.tool_version}};
  j["input"] = json{{"path", r.input_path}, {"sha256", r.input_sha256}};
  j["problem"] = json{{"N", r.N}, {"n", r.n}, {"m", r.m}, {"fixed_poles", complex_list(r.fixed_poles)}};
  j["method"] = r.method;
  json spectrum = json::object();
  put_optional(spectrum, "affine", r.n_affine);
  put_optional(spectrum, "real", r.n_real);
  put_optional(spectrum, "infinite", r.n_infinite);
  if (!spectrum.empty()) j["eigenvalue_counts"] = spectrum;
  j["global"] = r.global ? candidate_json(*r.global) : json(nullptr);
  json cands = json::array();
  for (const auto& c : r.candidates) cands.push_back(candidate_json(c));
  j["candidates"] = cands;
  j["warnings"] = r.warnings;
  j["timings"] = json{{"wall_time_s", r.wall_time_s}};
  return j;
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kSchemaVersion) throw InputError("unsupported report schema version");
    r.tool_version = j.at("tool").at("version").get<std::string>();
    r.input_path = j.at("input").at("path").get<std::string>();
    r.input_sha256 = j.at("input").at("sha256").get<std::string>();
    const json& p = j.at("problem");
    r.N = p.at("N").get<long>();
    r.n = p.at("n").get<int>();
    r.m = p.at("m").get<int>();
    r.fixed_poles = complex_list_from(p.at("fixed_poles"));
    r.method = j.at("method").get<std::string>();
    if (j.contains("eigenvalue_counts")) {
      const json& s = j["eigenvalue_counts"];
      r.n_affine = get_optional<int>(s, "affine");
      r.n_real = get_optional<int>(s, "real");
      r.n_infinite = get_optional<int>(s, "infinite");
    }
    if (!j.at("global").is_null()) r.global = candidate_from(j["global"]);
    for (const auto& c : j.at("candidates")) r.candidates.push_back(candidate_from(c));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.wall_time_s = j.at("timings").at("wall_time_s").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

void write_report_csv(std::ostream& out, const RunReport& r) {
  out << "rank,method,misfit_sq,estimated_poles,poles,b,fonc_max,hankel_rank\n";
  std::vector<const CandidateReport*> rows;
  if (r.global) rows.push_back(&*r.global);
  for (const auto& c : r.candidates) {
    if (!r.global || !(c == *r.global)) rows.push_back(&c);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CandidateReport& c = *rows[i];
    std::string b;
    for (std::size_t k = 0; k < c.b.size(); ++k) b += (k ? " " : "") + format_number(c.b[k]);
    out << i << ',' << r.method << ',' << format_number(c.misfit_sq) << ','
        << join_complex(c.estimated_poles) << ',' << join_complex(c.poles) << ',' << b << ','
        << (c.fonc ? format_number(c.fonc->max()) : "") << ','
        << (c.hankel_rank ? std::to_string(*c.hankel_rank) : "") << '\n';
  }
}

Vector read_data(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    if (*begin == '+') ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw InputError("data line " + std::to_string(line_no) + ": not a finite number: '" +
                       line.substr(first, last - first + 1) + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw InputError("data file holds no samples");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read data file '" + path + "'");
  return read_data(in);
}

void write_data(std::ostream& out, const Vector& values) {
  char buf[64];
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", values[k]);
    out << buf << '\n';
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_number(z.real());
  std::string out = format_number(z.real());
  if (!std::signbit(z.imag())) out += '+';
  return out + format_number(z.imag()) + 'j';
}

Complex parse_pole(const std::string& text) {
  auto number = [&text](const std::string& s) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw InputError("bad pole '" + text + "'");
    }
    return v;
  };
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  if (const auto at = text.find('@'); at != std::string::npos) {
    return std::polar(number(trim(text.substr(0, at))), number(trim(text.substr(at + 1))));
  }
  if (const auto comma = text.find(','); comma != std::string::npos) {
    return {number(trim(text.substr(0, comma))), number(trim(text.substr(comma + 1)))};
  }
  return {number(trim(text)), 0.0};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

}  // namespace gor::cli

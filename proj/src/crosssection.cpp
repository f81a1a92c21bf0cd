#include "cusptorsion/crosssection.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cusptorsion/zeta.hpp"
#include "json.hpp"

namespace cusptorsion::crosssection {

using nlohmann::json;

void CrossSection::validate() const {
  if (n < 2 || n % 2 != 0) throw SchemaError("cross section: n must be even and >= 2");
  if (betti.size() != static_cast<std::size_t>(n) + 1) {
    throw SchemaError("cross section: betti must have n+1 entries");
  }
  for (long long b : betti) {
    if (b < 0) throw SchemaError("cross section: negative Betti number");
  }
  if (rank_e < 1) throw SchemaError("cross section: rank_e must be >= 1");
  if (!std::isfinite(volume) || volume <= 0.0) throw SchemaError("cross section: volume must be > 0");
  if (!std::isfinite(tail_dimension_hint)) throw SchemaError("cross section: tail_dimension_hint must be finite");
  for (const auto& [p, spectrum] : coclosed) {
    if (p < 0 || p > n) throw SchemaError("cross section: coclosed degree out of range");
    try {
      spectrum.validate();
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("cross section: ") + e.what());
    }
  }
}

bool CrossSection::witt() const { return betti.at(n / 2) == 0; }

bool CrossSection::duality_symmetric() const {
  for (int p = 0; p <= n; ++p) {
    if (betti[p] != betti[n - p]) return false;
  }
  return true;
}

long long CrossSection::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t p = 0; p < betti.size(); ++p) chi += (p % 2 == 0 ? 1 : -1) * betti[p];
  return chi;
}

long long euler_char(const CrossSection& cs) { return cs.euler_characteristic(); }
bool witt_check(const CrossSection& cs) { return cs.witt(); }

namespace {

template <class T>
T get_integer(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw SchemaError(std::string("cross section: ") + key + " must be an integer");
  return v.get<T>();
}

double get_number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw SchemaError(std::string("cross section: ") + key + " must be a number");
  return v.get<double>();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CrossSection load_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("cross section: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("cross section: document must be a JSON object");
  static const std::set<std::string> keys = {"n", "betti", "rank_e", "volume", "coclosed",
                                             "tail_dimension_hint"};
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw SchemaError("cross section: unknown field '" + k + "'");
  }
  for (const auto& k : keys) {
    if (!j.contains(k)) throw SchemaError("cross section: missing field '" + k + "'");
  }
  CrossSection cs;
  cs.n = get_integer<int>(j, "n");
  if (!j["betti"].is_array()) throw SchemaError("cross section: betti must be an array");
  for (const auto& b : j["betti"]) {
    if (!b.is_number_integer()) throw SchemaError("cross section: Betti numbers must be integers");
    cs.betti.push_back(b.get<long long>());
  }
  cs.rank_e = get_integer<int>(j, "rank_e");
  cs.volume = get_number(j, "volume");
  cs.tail_dimension_hint = get_number(j, "tail_dimension_hint");
  if (!j["coclosed"].is_object()) throw SchemaError("cross section: coclosed must be an object");
  for (const auto& [key, list] : j["coclosed"].items()) {
    int p;
    std::size_t used = 0;
    try {
      p = std::stoi(key, &used);
    } catch (const std::exception&) {
      throw SchemaError("cross section: coclosed key '" + key + "' is not a degree");
    }
    if (used != key.size()) throw SchemaError("cross section: coclosed key '" + key + "' is not a degree");
    if (!list.is_array()) throw SchemaError("cross section: coclosed spectrum must be an array");
    SpectrumList spectrum;
    for (const auto& entry : list) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number_integer()) {
        throw SchemaError("cross section: spectrum entries must be [mu_sq, mult]");
      }
      spectrum.eigenvalues.emplace_back(entry[0].get<double>(), entry[1].get<long long>());
    }
    cs.coclosed[p] = std::move(spectrum);
  }
  cs.validate();
  return cs;
}

CrossSection load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open cross-section file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_text(ss.str());
}

std::string serialize(const CrossSection& cs) {
  // hand-written so that floats use 17 significant digits
  std::ostringstream os;
  os << "{\"betti\":[";
  for (std::size_t i = 0; i < cs.betti.size(); ++i) os << (i ? "," : "") << cs.betti[i];
  os << "],\"coclosed\":{";
  // keys as strings sort lexicographically in the canonical form
  std::map<std::string, const SpectrumList*> ordered;
  for (const auto& [p, spectrum] : cs.coclosed) ordered[std::to_string(p)] = &spectrum;
  bool first = true;
  for (const auto& [key, spectrum] : ordered) {
    os << (first ? "" : ",") << '"' << key << "\":[";
    first = false;
    for (std::size_t i = 0; i < spectrum->eigenvalues.size(); ++i) {
      os << (i ? "," : "") << '[' << format_double(spectrum->eigenvalues[i].first) << ','
         << spectrum->eigenvalues[i].second << ']';
    }
    os << ']';
  }
  os << "},\"n\":" << cs.n << ",\"rank_e\":" << cs.rank_e
     << ",\"tail_dimension_hint\":" << format_double(cs.tail_dimension_hint)
     << ",\"volume\":" << format_double(cs.volume) << '}';
  return os.str();
}

std::string digest(const CrossSection& cs) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize(cs)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

const SpectrumList* spectrum_for(const CrossSection& cs, int p) {
  if (p < 0 || p > cs.n) throw ZetaError("zeta: degree out of range");
  auto it = cs.coclosed.find(p);
  if (it == cs.coclosed.end()) throw ZetaError("zeta: no coclosed spectrum for degree " + std::to_string(p));
  return &it->second;
}

}  // namespace

double zeta_ccl(const CrossSection& cs, int p, double s) {
  const SpectrumList* spectrum = spectrum_for(cs, p);
  if (spectrum->empty()) return 0.0;
  if (auto lat = cs.lattice.find(p); lat != cs.lattice.end()) {
    if (std::abs(s - 1.0) < 1e-8) throw ZetaError("zeta: too close to the pole at s = 1");
    return std::pow(lat->second.scale, -s) * zeta::epstein_square(s);
  }
  const double half_dim = 0.5 * cs.tail_dimension_hint;
  if (std::abs(s - half_dim) < 1e-6) throw ZetaError("zeta: too close to the pole at s = d/2");
  double sum = 0.0;
  for (const auto& [lambda, mult] : spectrum->eigenvalues) sum += mult * std::pow(lambda, -s);
  // Weyl tail: N(lambda) ~ C lambda^{d/2}, C matched at the last eigenvalue.
  const double top = spectrum->eigenvalues.back().first;
  const double c = static_cast<double>(spectrum->count()) / std::pow(top, half_dim);
  sum += c * half_dim * std::pow(top, half_dim - s) / (s - half_dim);
  return sum;
}

double zeta_ccl_at_zero(const CrossSection& cs, int p) {
  const SpectrumList* spectrum = spectrum_for(cs, p);
  if (spectrum->empty()) return 0.0;
  if (cs.lattice.count(p)) return zeta::epstein_square(0.0);
  throw ZetaError("zeta(0) is only available for lattice spectra");
}

CrossSection generate_flat_torus_2d(double side, int cutoff) {
  if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("torus: side must be > 0");
  if (cutoff < 10) throw std::invalid_argument("torus: cutoff must be >= 10");
  std::map<long long, long long> counts;
  const long long r2 = static_cast<long long>(cutoff) * cutoff;
  for (long long j = -cutoff; j <= cutoff; ++j) {
    for (long long k = -cutoff; k <= cutoff; ++k) {
      const long long m = j * j + k * k;
      if (m != 0 && m <= r2) ++counts[m];
    }
  }
  const double scale = std::pow(2.0 * M_PI / side, 2);
  SpectrumList functions;
  for (const auto& [m, mult] : counts) functions.eigenvalues.emplace_back(scale * m, mult);
  CrossSection cs;
  cs.n = 2;
  cs.betti = {1, 2, 1};
  cs.rank_e = 1;
  cs.volume = side * side;
  cs.tail_dimension_hint = 2.0;
  cs.coclosed[0] = functions;
  cs.coclosed[1] = functions;
  cs.coclosed[2] = SpectrumList{};
  cs.lattice[0] = SquareLattice{scale};
  cs.lattice[1] = SquareLattice{scale};
  return cs;
}

}  // namespace cusptorsion::crosssection

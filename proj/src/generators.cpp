#include "vne/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vne {

SymmetricSparseMatrix fem_matrix(std::size_t m) {
  if (m == 0) throw std::domain_error("fem_matrix requires m >= 1");
  std::vector<Triplet> t;
  t.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
  }
  return SymmetricSparseMatrix::from_triplets(m, t, TripletPattern::lower);
}

SymmetricSparseMatrix random_psd(std::span<const double> spectrum, std::uint64_t seed) {
  const std::size_t m = spectrum.size();
  if (m == 0) throw std::domain_error("random_psd requires m >= 1");
  if (m > 2000) throw std::domain_error("random_psd is dense internally; m must be <= 2000");
  for (double d : spectrum) {
    if (!(d >= 0.0)) throw std::domain_error("random_psd requires a nonnegative spectrum");
  }
  // D = c I commutes with every rotation.
  if (std::all_of(spectrum.begin(), spectrum.end(), [&](double d) { return d == spectrum[0]; })) {
    return SymmetricSparseMatrix::diagonal(spectrum);
  }

  std::vector<double> a(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) a[i * m + i] = spectrum[i];

  std::mt19937_64 engine(seed);
  const auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  const std::size_t rotations = m < 2 ? 0 : 4 * m;
  for (std::size_t r = 0; r < rotations; ++r) {
    const std::size_t p = engine() % m;
    std::size_t q = engine() % (m - 1);
    if (q >= p) ++q;
    const double angle = 2.0 * std::numbers::pi * uniform();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    // A <- G A G^T, G the rotation in the (p, q) plane.
    for (std::size_t k = 0; k < m; ++k) {
      const double ap = a[p * m + k];
      const double aq = a[q * m + k];
      a[p * m + k] = c * ap - s * aq;
      a[q * m + k] = s * ap + c * aq;
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double ap = a[k * m + p];
      const double aq = a[k * m + q];
      a[k * m + p] = c * ap - s * aq;
      a[k * m + q] = s * ap + c * aq;
    }
  }

  std::vector<Triplet> t;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = 0.5 * (a[i * m + j] + a[j * m + i]);
      if (v != 0.0) t.push_back({i, j, v});
    }
  }
  return SymmetricSparseMatrix::from_triplets(m, t, TripletPattern::lower);
}

void SpdcParams::validate() const {
  if (m < 2) throw std::invalid_argument("SPDC grid needs m >= 2");
  if (!(omega_max > omega_min)) throw std::invalid_argument("SPDC grid needs omega_max > omega_min");
  if (!(tau_p > 0.0)) throw std::invalid_argument("SPDC tau_p must be > 0");
  if (!(crystal_length >= 0.0)) throw std::invalid_argument("SPDC crystal_length must be >= 0");
  if (!(poling_period > 0.0)) throw std::invalid_argument("SPDC poling_period must be > 0");
  if (!(amplitude != 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("SPDC amplitude must be finite and nonzero");
  }
  if (!(droptol >= 0.0 && droptol < 1.0)) throw std::invalid_argument("SPDC droptol must lie in [0, 1)");
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double pump_envelope(double detuning, double tau_p) {
  return std::exp(-detuning * detuning * tau_p * tau_p / (8.0 * std::numbers::ln2));
}

}  // namespace

SpdcParams read_spdc_config(std::istream& in) {
  SpdcParams p;
  std::map<std::string, double*> reals{
      {"tau_p", &p.tau_p},
      {"omega_cp", &p.omega_cp},
      {"crystal_length", &p.crystal_length},
      {"poling_period", &p.poling_period},
      {"omega_min", &p.omega_min},
      {"omega_max", &p.omega_max},
      {"amplitude", &p.amplitude},
      {"droptol", &p.droptol},
  };
  for (auto [name, disp] : {std::pair{"idler", &p.idler}, std::pair{"signal", &p.signal},
                            std::pair{"pump", &p.pump}}) {
    const std::string prefix = name;
    reals[prefix + "_beta0"] = &disp->beta0;
    reals[prefix + "_beta1"] = &disp->beta1;
    reals[prefix + "_beta2"] = &disp->beta2;
    reals[prefix + "_omega0"] = &disp->omega0;
  }

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = "SPDC config line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw std::invalid_argument(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (auto it = reals.find(key); it != reals.end()) {
        std::size_t used = 0;
        *it->second = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
      } else if (key == "m") {
        std::size_t used = 0;
        const long long m = std::stoll(value, &used);
        if (used != value.size() || m < 0) throw std::invalid_argument("bad grid size");
        p.m = static_cast<std::size_t>(m);
      } else if (key == "separable_test_mode") {
        p.separable_test_mode = parse_bool(value);
      } else if (key == "auto_phase_match") {
        p.auto_phase_match = parse_bool(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument(where + "value out of range");
    }
  }
  p.validate();
  return p;
}

SpdcParams read_spdc_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open SPDC config '" + path.string() + "'");
  return read_spdc_config(in);
}

std::vector<double> spdc_joint_amplitude(const SpdcParams& params) {
  params.validate();
  const std::size_t m = params.m;
  const double step = (params.omega_max - params.omega_min) / static_cast<double>(m - 1);
  const auto omega = [&](std::size_t i) { return params.omega_min + step * static_cast<double>(i); };

  Dispersion pump = params.pump;
  if (params.auto_phase_match) {
    const double half = 0.5 * params.omega_cp;
    pump.beta0 = 0.0;
    pump.beta0 = params.idler(half) + params.signal(half) - pump(params.omega_cp) +
                 2.0 * std::numbers::pi / params.poling_period;
  }

  std::vector<double> f(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    const double wi = omega(a);
    for (std::size_t c = 0; c < m; ++c) {
      const double ws = omega(c);
      double value = 0.0;
      if (params.separable_test_mode) {
        const double half = 0.5 * params.omega_cp;
        value = pump_envelope(wi - half, params.tau_p) * pump_envelope(ws - half, params.tau_p);
      } else {
        const double dk = params.idler(wi) + params.signal(ws) - pump(wi + ws) +
                          2.0 * std::numbers::pi / params.poling_period;
        value = pump_envelope(wi + ws - params.omega_cp, params.tau_p) *
                sinc(0.5 * dk * params.crystal_length);
      }
      f[a * m + c] = params.amplitude * value;
    }
  }
  return f;
}

SpdcMatrix spdc_density_matrix(const SpdcParams& params) {
  const std::vector<double> f = spdc_joint_amplitude(params);
  const std::size_t m = params.m;
  const double step = (params.omega_max - params.omega_min) / static_cast<double>(m - 1);

  std::vector<double> gram(m * m, 0.0);
  double max_abs = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double sum = 0.0;
      for (std::size_t c = 0; c < m; ++c) sum += f[a * m + c] * f[b * m + c];
      gram[a * m + b] = sum * step;
      max_abs = std::max(max_abs, std::abs(gram[a * m + b]));
    }
  }

  SpdcMatrix out;
  const double fwhm = 4.0 * std::numbers::sqrt2 * std::numbers::ln2 / params.tau_p;
  out.points_per_fwhm = fwhm / step;
  if (out.points_per_fwhm < 8.0) {
    std::ostringstream msg;
    msg << "grid resolves the pump envelope FWHM with only " << out.points_per_fwhm
        << " points (< 8)";
    out.warnings.push_back(msg.str());
  }

  std::vector<Triplet> t;
  const double cutoff = params.droptol * max_abs;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const double v = gram[a * m + b];
      if (std::abs(v) >= cutoff && v != 0.0) t.push_back({a, b, v});
    }
  }
  if (t.empty()) throw std::domain_error("SPDC density matrix is identically zero on this grid");
  out.matrix = SymmetricSparseMatrix::from_triplets(m, t, TripletPattern::lower);
  return out;
}

}  // namespace vne

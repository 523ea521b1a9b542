#include "vne/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vne/estimator.hpp"
#include "vne/generators.hpp"
#include "vne/matrix_market.hpp"
#include "vne/oracle.hpp"
#include "vne/report.hpp"
#include "vne/spectral_bound.hpp"

namespace vne::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

unsigned default_threads() {
  if (const char* env = std::getenv("VNE_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct Source {
  std::string input;
  std::string generate;
};

void add_source(CLI::App& cmd, Source& src) {
  cmd.add_option("-i,--input", src.input, "Matrix Market file");
  cmd.add_option("-g,--generate", src.generate,
                 "Generator spec: fem:M, zero:M, identity:M, mixed:M, random:M[:SEED], spdc[:CONFIG]");
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 1) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + " '" + text + "'");
  }
}

struct Loaded {
  SymmetricSparseMatrix matrix;
  std::string description;
  std::vector<std::string> warnings;
};

Loaded generate(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string piece; std::getline(ss, piece, ':');) parts.push_back(piece);
  if (parts.empty()) throw UsageError("empty generator spec");
  const std::string& kind = parts[0];

  const auto size_arg = [&]() {
    if (parts.size() < 2) throw UsageError("generator '" + kind + "' needs a size, e.g. " + kind + ":100");
    return parse_size(parts[1], "matrix size");
  };

  if (kind == "fem") {
    if (parts.size() != 2) throw UsageError("expected fem:M");
    return {fem_matrix(size_arg()), spec, {}};
  }
  if (kind == "zero") {
    if (parts.size() != 2) throw UsageError("expected zero:M");
    return {SymmetricSparseMatrix::from_triplets(size_arg(), {}, TripletPattern::full), spec, {}};
  }
  if (kind == "identity") {
    if (parts.size() != 2) throw UsageError("expected identity:M");
    return {SymmetricSparseMatrix::scaled_identity(size_arg(), 1.0), spec, {}};
  }
  if (kind == "mixed") {
    if (parts.size() != 2) throw UsageError("expected mixed:M");
    const std::size_t m = size_arg();
    return {SymmetricSparseMatrix::scaled_identity(m, 1.0 / static_cast<double>(m)), spec, {}};
  }
  if (kind == "random") {
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("expected random:M[:SEED]");
    const std::size_t m = size_arg();
    const std::uint64_t seed = parts.size() == 3 ? parse_size(parts[2], "seed") : 1;
    std::vector<double> spectrum(m);
    for (std::size_t i = 0; i < m; ++i) spectrum[i] = static_cast<double>(i) / static_cast<double>(m);
    return {random_psd(spectrum, seed), spec, {}};
  }
  if (kind == "spdc") {
    if (parts.size() > 2) throw UsageError("expected spdc or spdc:CONFIG");
    SpdcParams params;
    if (parts.size() == 2) {
      try {
        params = read_spdc_config(std::filesystem::path(parts[1]));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    auto built = spdc_density_matrix(params);
    return {std::move(built.matrix), spec, std::move(built.warnings)};
  }
  throw UsageError("unknown generator '" + kind + "'");
}

Loaded load(const Source& src) {
  if (src.input.empty() == src.generate.empty()) {
    throw UsageError("exactly one of --input or --generate is required");
  }
  if (!src.input.empty()) return {read_matrix_market(std::filesystem::path(src.input)), src.input, {}};
  return generate(src.generate);
}

void check_common(int degree, double confidence) {
  if (degree < 1) throw UsageError("degree n must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw UsageError("confidence p must lie in (0, 1)");
}

struct EntropyArgs {
  Source source;
  int degree = 10;
  double confidence = 0.95;
  std::uint64_t seed = 1;
  double x0 = 1.0;
  std::optional<double> gamma0;
  std::string bound = "gershgorin";
  double safety = 1.05;
  double power_rel_tol = 1e-8;
  int power_max_iters = 1000;
  bool normalize = false;
  std::size_t max_samples = 10000;
  std::optional<std::size_t> samples;
  unsigned threads = 1;
  bool verify_psd = false;
  bool bits = false;
};

json run_entropy(const EntropyArgs& args, std::ostream& err) {
  check_common(args.degree, args.confidence);
  if (!(args.x0 > 0.0)) throw UsageError("x0 must be > 0");
  if (args.max_samples < 8) throw UsageError("--nmax must be >= 8");
  if (args.samples && *args.samples < 1) throw UsageError("--samples must be >= 1");

  const auto loaded = load(args.source);
  const auto& a = loaded.matrix;
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';

  if (args.verify_psd) require_psd(dense_spectrum(a));

  json bound_info;
  ScalingParams scaling;
  const double tr = trace(a);
  if (args.gamma0) {
    if (!(*args.gamma0 > 0.0)) throw UsageError("--gamma0 must be > 0");
    scaling = {.x0 = args.x0, .gamma0 = *args.gamma0, .provenance = BoundMethod::user_supplied};
    bound_info["method"] = "user-supplied";
  } else {
    const SpectralBound bound =
        args.bound == "gershgorin"
            ? gershgorin_upper_bound(a)
            : power_iteration_bound(a, {.max_iters = args.power_max_iters,
                                        .rel_tol = args.power_rel_tol,
                                        .safety = args.safety,
                                        .seed = args.seed});
    bound_info["method"] = std::string(to_string(bound.method));
    bound_info["lambda_max_upper"] = bound.lambda_max_upper;
    if (bound.method == BoundMethod::power_iteration) {
      bound_info["safety"] = bound.safety;
      bound_info["rel_tol"] = bound.rel_tol;
      bound_info["iterations"] = bound.iterations;
    }
    if (bound.lambda_max_upper > 0.0) {
      scaling = scaling_from_bound(bound, args.x0);
    } else if (tr != 0.0) {
      throw std::domain_error("spectral bound is zero for a matrix with nonzero trace");
    }
  }

  EstimatorOptions options{.degree = args.degree,
                           .confidence = args.confidence,
                           .max_samples = args.max_samples,
                           .threads = args.threads,
                           .observer = {}};
  const auto start = std::chrono::steady_clock::now();
  const auto estimate = entropy_with_normalization(a, options, scaling, RademacherSampler{args.seed},
                                                   args.normalize, args.samples);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report = to_json(estimate);
  if (args.bits) {
    report["entropy_bits"] = estimate.value / std::numbers::ln2;
    report["tau_bits"] = estimate.tau / std::numbers::ln2;
  }
  report["method"]["bound"] = bound_info;
  report["method"]["source"] = loaded.description;
  if (!loaded.warnings.empty()) report["method"]["warnings"] = loaded.warnings;

  err << "entropy " << estimate.value << " +- " << estimate.tau << " (p=" << estimate.confidence
      << ", N=" << estimate.samples_used << ", n=" << estimate.degree << ")";
  if (estimate.zero_trace) err << " [zero trace]";
  if (estimate.capped) err << " [sample cap reached]";
  err << " in " << seconds << " s\n";
  return report;
}

struct OracleArgs {
  Source source;
  bool normalize = false;
  std::size_t max_dim = kDefaultOracleCap;
};

json run_oracle(const OracleArgs& args, std::ostream& err) {
  const auto loaded = load(args.source);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  Spectrum spectrum = dense_spectrum(loaded.matrix, args.max_dim);
  const double tr = trace(loaded.matrix);
  if (args.normalize) {
    if (tr == 0.0) throw std::domain_error("cannot normalize a matrix with zero trace");
    for (double& l : spectrum.eigenvalues) l /= tr;
  }
  const double entropy = exact_entropy(spectrum);
  json j;
  j["entropy"] = entropy;
  j["min_eig"] = spectrum.eigenvalues.front();
  j["max_eig"] = spectrum.eigenvalues.back();
  j["trace"] = args.normalize ? 1.0 : tr;
  j["dimension"] = loaded.matrix.dim();
  j["normalized"] = args.normalize;
  err << "exact entropy " << entropy << '\n';
  return j;
}

struct GenerateArgs {
  Source source;
  std::string output;
};

json run_generate(const GenerateArgs& args, std::ostream& err) {
  const auto loaded = load(args.source);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  write_matrix_market(loaded.matrix, std::filesystem::path(args.output));
  json j;
  j["output"] = args.output;
  j["dimension"] = loaded.matrix.dim();
  j["nnz"] = loaded.matrix.nnz();
  j["trace"] = trace(loaded.matrix);
  j["source"] = loaded.description;
  if (!loaded.warnings.empty()) j["warnings"] = loaded.warnings;
  err << "wrote " << loaded.matrix.dim() << "x" << loaded.matrix.dim() << " matrix ("
      << loaded.matrix.nnz() << " stored entries) to " << args.output << '\n';
  return j;
}

struct Table1Args {
  std::vector<std::size_t> sizes{10, 50, 100, 500, 1000, 5000};
  std::vector<int> degrees{2, 3, 3, 4, 6, 8};
  double confidence = 0.95;
  std::uint64_t seed = 1;
  std::size_t max_samples = 10000;
  unsigned threads = 1;
};

json run_table1(const Table1Args& args, std::ostream& err) {
  if (args.sizes.size() != args.degrees.size()) {
    throw UsageError("--sizes and --degrees must have the same length");
  }
  for (int n : args.degrees) check_common(n, args.confidence);
  json rows = json::array();
  err << "     m   n     N        exact     estimate    abs.err  rel.err      tau\n";
  for (std::size_t r = 0; r < args.sizes.size(); ++r) {
    const std::size_t m = args.sizes[r];
    const auto a = fem_matrix(m);
    const auto scaling = scaling_from_bound(gershgorin_upper_bound(a));
    const EstimatorOptions options{.degree = args.degrees[r],
                                   .confidence = args.confidence,
                                   .max_samples = args.max_samples,
                                   .threads = args.threads,
                                   .observer = {}};
    const auto e = estimate_adaptive(a, options, scaling, RademacherSampler{args.seed});
    const double exact = fem_exact_entropy(m);
    const double abs_err = std::abs(e.value - exact);
    json row;
    row["m"] = m;
    row["degree"] = e.degree;
    row["samples"] = e.samples_used;
    row["exact"] = exact;
    row["estimate"] = e.value;
    row["abs_err"] = abs_err;
    row["rel_err"] = abs_err / std::abs(exact);
    row["tau"] = e.tau;
    row["capped"] = e.capped;
    rows.push_back(std::move(row));
    char line[160];
    std::snprintf(line, sizeof line, "%6zu %3d %5zu %12.5g %12.5g %10.4f %7.4f%% %8.5g\n", m,
                  e.degree, e.samples_used, exact, e.value, abs_err,
                  100.0 * abs_err / std::abs(exact), e.tau);
    err << line;
  }
  json j;
  j["confidence"] = args.confidence;
  j["seed"] = args.seed;
  j["gamma0_method"] = "gershgorin";
  j["x0"] = 1.0;
  j["rows"] = std::move(rows);
  return j;
}

json error_json(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = message;
  j["kind"] = kind;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic Chebyshev estimation of the von Neumann entropy -tr(A log A)"};
  app.require_subcommand(1);

  EntropyArgs entropy;
  entropy.threads = default_threads();
  auto* entropy_cmd = app.add_subcommand("entropy", "Estimate the entropy of a sparse PSD matrix");
  add_source(*entropy_cmd, entropy.source);
  entropy_cmd->add_option("-n,--degree", entropy.degree, "Chebyshev degree n")->capture_default_str();
  entropy_cmd->add_option("-p,--confidence", entropy.confidence, "Confidence p")->capture_default_str();
  entropy_cmd->add_option("--seed", entropy.seed, "Sampler seed")->capture_default_str();
  entropy_cmd->add_option("--x0", entropy.x0, "Interval endpoint x0")->capture_default_str();
  entropy_cmd->add_option("--gamma0", entropy.gamma0, "Override gamma0 (spectrum within [0, x0 gamma0])");
  entropy_cmd->add_option("--bound", entropy.bound, "Spectral bound method")
      ->check(CLI::IsMember({"gershgorin", "power"}))
      ->capture_default_str();
  entropy_cmd->add_option("--safety", entropy.safety, "Power-iteration safety factor")->capture_default_str();
  entropy_cmd->add_option("--power-tol", entropy.power_rel_tol, "Power-iteration relative tolerance")
      ->capture_default_str();
  entropy_cmd->add_option("--power-iters", entropy.power_max_iters, "Power-iteration max iterations")
      ->capture_default_str();
  entropy_cmd->add_flag("--normalize", entropy.normalize, "Estimate the entropy of A / tr(A)");
  entropy_cmd->add_option("--nmax", entropy.max_samples, "Adaptive sample cap")->capture_default_str();
  entropy_cmd->add_option("--samples", entropy.samples, "Fixed sample count (disables adaptivity)");
  entropy_cmd->add_option("--threads", entropy.threads, "Worker threads (results do not depend on it)");
  entropy_cmd->add_flag("--verify-psd", entropy.verify_psd, "Check PSD with the dense oracle first");
  entropy_cmd->add_flag("--bits", entropy.bits, "Also report entropy in bits");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact entropy by dense diagonalization");
  add_source(*oracle_cmd, oracle.source);
  oracle_cmd->add_flag("--normalize", oracle.normalize, "Entropy of A / tr(A)");
  oracle_cmd->add_option("--max-dim", oracle.max_dim, "Refuse matrices larger than this")
      ->capture_default_str();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated matrix as Matrix Market");
  add_source(*gen_cmd, gen.source);
  gen_cmd->add_option("-o,--output", gen.output, "Output .mtx path")->required();

  Table1Args table;
  table.threads = default_threads();
  auto* table_cmd = app.add_subcommand("table1", "Finite element matrix entropy table");
  table_cmd->add_option("--sizes", table.sizes, "Matrix sizes")->capture_default_str();
  table_cmd->add_option("--degrees", table.degrees, "Chebyshev degree per size")->capture_default_str();
  table_cmd->add_option("-p,--confidence", table.confidence, "Confidence p")->capture_default_str();
  table_cmd->add_option("--seed", table.seed, "Sampler seed")->capture_default_str();
  table_cmd->add_option("--nmax", table.max_samples, "Adaptive sample cap")->capture_default_str();
  table_cmd->add_option("--threads", table.threads, "Worker threads (results do not depend on it)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", e.what()).dump(2) << '\n';
    return kUsageError;
  }

  try {
    json result;
    if (entropy_cmd->parsed()) {
      result = run_entropy(entropy, err);
    } else if (oracle_cmd->parsed()) {
      result = run_oracle(oracle, err);
    } else if (gen_cmd->parsed()) {
      result = run_generate(gen, err);
    } else {
      result = run_table1(table, err);
    }
    out << result.dump(2) << '\n';
    return kOk;
  } catch (const UsageError& e) {
    out << error_json("usage", e.what()).dump(2) << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    out << error_json("computation", e.what()).dump(2) << '\n';
    return kComputationError;
  }
}

}  // namespace vne::cli

#ifndef AFFSCALE_IO_HPP
#define AFFSCALE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "affscale/driver.hpp"
#include "affscale/hyperbolic.hpp"
#include "affscale/sdp.hpp"

namespace affscale::io {

// ---- SDPA sparse (.dat-s) ----

/// Blocks are concatenated into one dense block (negative sizes are diagonal
/// blocks). Matrix 0 is stored as C as written. ParseError carries the line.
SdpInstance parse_sdpa(const std::string& text);
std::string write_sdpa(const SdpInstance& sdp);

// ---- generators ----

struct SdpGenerated {
  SdpInstance instance;
  Mat start;  // E0, on the central path at parameter mu
};

/// E0 = Q diag(U[0.5, 2]) Q^T, Gaussian symmetric A_i, b = A(E0),
/// C = A^* y0 + mu E0^{-1}. RetryExhausted after 10 rejected draws.
SdpGenerated gen_central_path_sdp(int n, int m, double mu, std::uint64_t seed);

/// Same construction for a hyperbolic family: e0 = canonical direction +
/// radius * u with ||u||_e = 1, c = A^T y0 - mu g(e0). The determinant
/// family embeds gen_central_path_sdp(order, m, mu, seed) under svec.
HpInstance gen_hp_instance(const HpFamily& family, int m, double mu, std::uint64_t seed,
                           double radius = 0.5);

// ---- HP JSON ----

struct HpDocument {
  HpInstance instance;
  nlohmann::json metadata = nlohmann::json::object();
};

/// {"family": "...", "d": .., "k": .. | "n": .., "c": [...], "A": [[...]], "b": [...],
///  "e0": [...], "metadata": {...}}
HpDocument parse_hp_json(const std::string& text);
std::string write_hp_json(const HpDocument& doc);

/// Start-point sidecar for SDPA files: {"E0": [[...], ...]}.
Mat parse_start_json(const std::string& text);
std::string write_start_json(const Mat& e0);

// ---- traces ----

struct TraceHeader {
  std::string instance_id;
  std::string backend;
  double alpha = 0.0, kappa = 0.0, beta = 0.0;
  int n = 0;
  int m = 0;
  SolverConfig config;
};

TraceHeader make_trace_header(std::string instance_id, std::string backend, int degree, int m,
                              const SolverConfig& config);

struct TraceFile {
  TraceHeader header;
  std::vector<IterationRecord> rows;
  std::string status;
  int iterations = 0;
  double final_gap = 0.0;
  ViolationCounts violations;
};

enum class TraceFormat { Csv, Json };

/// CSV: header row and one row per iteration, %.17g. JSON: header/rows/footer.
std::string export_trace(const SolveResult& result, const TraceHeader& header, TraceFormat format);
TraceFile parse_trace_json(const std::string& text);

// ---- files ----

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace affscale::io

#endif  // AFFSCALE_IO_HPP

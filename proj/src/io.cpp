#include "affscale/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace affscale::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char lead = raw[first];
    if (lead == '"' || lead == '*' || lead == '#') continue;
    for (char& ch : raw) {
      if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
    }
    Line line{number, {}};
    std::istringstream words(raw);
    std::string w;
    while (words >> w) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double to_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) parse_error(line, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_error(line, "bad number '" + s + "'");
  }
}

long to_int(const std::string& s, int line) {
  const double v = to_double(s, line);
  if (v != std::floor(v)) parse_error(line, "expected an integer, got '" + s + "'");
  return static_cast<long>(v);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (const double x : v) out.push_back(x);
  return out;
}

json mat_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i).transpose()));
  return out;
}

Vec json_vec(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::ParseError, std::string(what) + " has a non-number");
    v(i) = j[i].get<double>();
  }
  return v;
}

Mat json_mat(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a nonempty array");
  const Vec first = json_vec(j[0], what);
  Mat m(j.size(), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vec row = json_vec(j[i], what);
    if (row.size() != first.size()) throw Error(ErrorKind::ParseError, std::string(what) + " is ragged");
    m.row(i) = row.transpose();
  }
  return m;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(key) + ": " + e.what());
  }
}

}  // namespace

SdpInstance parse_sdpa(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  std::size_t li = 0;
  auto next_line = [&](const char* what) -> const Line& {
    if (li >= lines.size()) parse_error(lines.empty() ? 0 : lines.back().number, std::string("missing ") + what);
    return lines[li++];
  };

  const Line& m_line = next_line("constraint count");
  const long m = to_int(m_line.tokens[0], m_line.number);
  if (m < 1) parse_error(m_line.number, "constraint count must be >= 1");
  const Line& nb_line = next_line("block count");
  const long nblocks = to_int(nb_line.tokens[0], nb_line.number);
  if (nblocks < 1) parse_error(nb_line.number, "block count must be >= 1");

  // Block sizes and b may wrap across lines.
  std::vector<std::pair<std::string, int>> pending;
  auto take = [&](long count, const char* what) {
    std::vector<std::pair<std::string, int>> out;
    while (static_cast<long>(out.size()) < count) {
      const Line& l = next_line(what);
      for (const auto& tok : l.tokens) out.emplace_back(tok, l.number);
    }
    if (static_cast<long>(out.size()) > count) {
      parse_error(out[count].second, std::string("too many values for ") + what);
    }
    return out;
  };

  SdpInstance sdp;
  std::vector<int> offsets;
  int order = 0;
  for (const auto& [tok, line] : take(nblocks, "block sizes")) {
    const long size = to_int(tok, line);
    if (size == 0) parse_error(line, "block size must be nonzero");
    sdp.block_sizes.push_back(static_cast<int>(size));
    offsets.push_back(order);
    order += static_cast<int>(std::labs(size));
  }
  sdp.rhs.resize(m);
  {
    const auto values = take(m, "right-hand side");
    for (long i = 0; i < m; ++i) sdp.rhs(i) = to_double(values[i].first, values[i].second);
  }

  sdp.objective = Mat::Zero(order, order);
  sdp.constraints.assign(m, Mat::Zero(order, order));
  std::vector<int> entry_count(m + 1, 0);
  for (; li < lines.size(); ++li) {
    const Line& l = lines[li];
    if (l.tokens.size() != 5) parse_error(l.number, "expected 'matno blkno i j value'");
    const long mat = to_int(l.tokens[0], l.number);
    const long blk = to_int(l.tokens[1], l.number);
    long i = to_int(l.tokens[2], l.number);
    long j = to_int(l.tokens[3], l.number);
    const double v = to_double(l.tokens[4], l.number);
    if (mat < 0 || mat > m) parse_error(l.number, "matrix index out of range");
    if (blk < 1 || blk > nblocks) parse_error(l.number, "block index out of range");
    const int size = std::abs(sdp.block_sizes[blk - 1]);
    if (i > j) std::swap(i, j);
    if (i < 1 || j > size) parse_error(l.number, "entry outside its block");
    if (sdp.block_sizes[blk - 1] < 0 && i != j) parse_error(l.number, "off-diagonal entry in a diagonal block");
    Mat& target = mat == 0 ? sdp.objective : sdp.constraints[mat - 1];
    const int r = offsets[blk - 1] + static_cast<int>(i) - 1;
    const int c = offsets[blk - 1] + static_cast<int>(j) - 1;
    target(r, c) = v;
    target(c, r) = v;
    ++entry_count[mat];
  }
  for (long k = 1; k <= m; ++k) {
    if (entry_count[k] == 0 || sdp.constraints[k - 1].isZero(0.0)) {
      parse_error(lines.back().number, "constraint " + std::to_string(k) + " has no entries");
    }
  }
  sdp.validate();
  return sdp;
}

std::string write_sdpa(const SdpInstance& sdp) {
  std::vector<int> sizes = sdp.block_sizes;
  if (sizes.empty()) sizes.push_back(sdp.order());
  std::ostringstream out;
  out << sdp.num_constraints() << "\n" << sizes.size() << "\n";
  for (std::size_t k = 0; k < sizes.size(); ++k) out << (k ? " " : "") << sizes[k];
  out << "\n";
  for (int k = 0; k < sdp.num_constraints(); ++k) out << (k ? " " : "") << fmt17(sdp.rhs(k));
  out << "\n";
  for (int mat = 0; mat <= sdp.num_constraints(); ++mat) {
    const Mat& a = mat == 0 ? sdp.objective : sdp.constraints[mat - 1];
    int offset = 0;
    for (std::size_t blk = 0; blk < sizes.size(); ++blk) {
      const int size = std::abs(sizes[blk]);
      for (int i = 0; i < size; ++i) {
        for (int j = i; j < size; ++j) {
          if (sizes[blk] < 0 && i != j) continue;
          const double v = a(offset + i, offset + j);
          if (v == 0.0) continue;
          out << mat << " " << blk + 1 << " " << i + 1 << " " << j + 1 << " " << fmt17(v) << "\n";
        }
      }
      offset += size;
    }
  }
  return out.str();
}

SdpGenerated gen_central_path_sdp(int n, int m, double mu, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::DomainError, "n must be >= 2");
  if (m < 1 || m > svec_dim(n) - 1) throw Error(ErrorKind::DomainError, "need 1 <= m <= n(n+1)/2 - 1");
  if (!(mu > 0.0)) throw Error(ErrorKind::DomainError, "mu must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> spread(0.5, 2.0);
  auto gaussian = [&](int rows, int cols) {
    Mat g(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) g(i, j) = gauss(rng);
    return g;
  };

  for (int attempt = 0; attempt < 10; ++attempt) {
    const Mat q = Eigen::HouseholderQR<Mat>(gaussian(n, n)).householderQ();
    Vec eig(n);
    for (auto& v : eig) v = spread(rng);
    Mat e0 = q * eig.asDiagonal() * q.transpose();
    e0 = 0.5 * (e0 + e0.transpose());
    const Mat e0_inv = q * eig.cwiseInverse().asDiagonal() * q.transpose();

    SdpGenerated out;
    SdpInstance& sdp = out.instance;
    sdp.block_sizes = {n};
    for (int i = 0; i < m; ++i) {
      const Mat g = gaussian(n, n);
      sdp.constraints.push_back(0.5 * (g + g.transpose()));
    }
    sdp.rhs = sdp.apply(e0);
    const Vec y0 = gaussian(m, 1);
    sdp.objective = sdp.apply_adjoint(y0) + mu * 0.5 * (e0_inv + e0_inv.transpose());
    out.start = e0;
    try {
      sdp.validate();
      return out;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::InvariantViolation) throw;
    }
  }
  throw Error(ErrorKind::RetryExhausted, "no valid instance after 10 draws");
}

HpInstance gen_hp_instance(const HpFamily& family, int m, double mu, std::uint64_t seed,
                           double radius) {
  if (family.tag == FamilyTag::Determinant) {
    const SdpGenerated g = gen_central_path_sdp(family.degree, m, mu, seed);
    HpInstance hp;
    hp.family = family;
    hp.objective = g.instance.objective_vector();
    hp.constraints = g.instance.constraint_matrix();
    hp.rhs = g.instance.rhs;
    hp.start = svec(g.start);
    return hp;
  }
  const int d = family.dim;
  if (m < 1 || m > d - 1) throw Error(ErrorKind::DomainError, "need 1 <= m <= d - 1");
  if (!(mu > 0.0)) throw Error(ErrorKind::DomainError, "mu must be positive");
  if (!(radius >= 0.0 && radius < 1.0)) throw Error(ErrorKind::DomainError, "radius must lie in [0, 1)");

  const auto oracle = hp_barrier_oracle(family);
  const Vec center = canonical_direction(family);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto gaussian_vec = [&](int k) {
    Vec v(k);
    for (auto& x : v) x = gauss(rng);
    return v;
  };

  for (int attempt = 0; attempt < 10; ++attempt) {
    const Vec u = gaussian_vec(d);
    const double u_norm = std::sqrt(local_inner(*oracle, center, u, u));
    HpInstance hp;
    hp.family = family;
    hp.start = u_norm > 0.0 ? Vec(center + (radius / u_norm) * u) : center;
    hp.constraints.resize(m, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < m; ++i) hp.constraints(i, j) = gauss(rng);
    hp.rhs = hp.constraints * hp.start;
    const Vec y0 = gaussian_vec(m);
    hp.objective = hp.constraints.transpose() * y0 - mu * oracle->gradient(hp.start);
    try {
      hp.validate(*oracle);
      return hp;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::InvariantViolation) throw;
    }
  }
  throw Error(ErrorKind::RetryExhausted, "no valid instance after 10 draws");
}

HpDocument parse_hp_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");
  const auto name = field<std::string>(j, "family");
  HpDocument doc;
  HpInstance& hp = doc.instance;
  try {
    if (name == "determinant") {
      hp.family = HpFamily::determinant(field<int>(j, "n"));
    } else {
      const int k = name == "elementary_symmetric" ? field<int>(j, "k") : 0;
      hp.family = HpFamily::from_name(name, field<int>(j, "d"), k);
    }
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, err.what());
  }
  if (!j.contains("c") || !j.contains("A") || !j.contains("b") || !j.contains("e0")) {
    throw Error(ErrorKind::ParseError, "fields c, A, b, e0 are required");
  }
  hp.objective = json_vec(j["c"], "c");
  hp.constraints = json_mat(j["A"], "A");
  hp.rhs = json_vec(j["b"], "b");
  hp.start = json_vec(j["e0"], "e0");
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  const auto oracle = hp_barrier_oracle(hp.family);
  hp.validate(*oracle);
  return doc;
}

std::string write_hp_json(const HpDocument& doc) {
  const HpInstance& hp = doc.instance;
  json j;
  j["family"] = hp.family.name();
  if (hp.family.tag == FamilyTag::Determinant) {
    j["n"] = hp.family.degree;
  } else {
    j["d"] = hp.family.dim;
    if (hp.family.tag == FamilyTag::ElementarySymmetric) j["k"] = hp.family.degree;
  }
  j["c"] = vec_json(hp.objective);
  j["A"] = mat_json(hp.constraints);
  j["b"] = vec_json(hp.rhs);
  j["e0"] = vec_json(hp.start);
  j["metadata"] = doc.metadata;
  return j.dump(1) + "\n";
}

Mat parse_start_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("E0")) throw Error(ErrorKind::ParseError, "missing field 'E0'");
  return json_mat(j["E0"], "E0");
}

std::string write_start_json(const Mat& e0) {
  json j;
  j["E0"] = mat_json(e0);
  return j.dump(1) + "\n";
}

TraceHeader make_trace_header(std::string instance_id, std::string backend, int degree, int m,
                              const SolverConfig& config) {
  const ScheduleConstants k = schedule_constants(config.alpha, degree);
  TraceHeader h;
  h.instance_id = std::move(instance_id);
  h.backend = std::move(backend);
  h.alpha = k.alpha;
  h.kappa = k.kappa;
  h.beta = k.beta;
  h.n = degree;
  h.m = m;
  h.config = config;
  return h;
}

namespace {

json violations_json(const ViolationCounts& v) {
  return {{"primal_monotone", v.primal_monotone}, {"dual_monotone", v.dual_monotone},
          {"ratio_bound", v.ratio_bound},         {"dual_carry", v.dual_carry},
          {"swath", v.swath}};
}

json row_json(const IterationRecord& r) {
  return {{"k", r.k},
          {"alpha", r.alpha},
          {"gap", r.gap},
          {"t", r.t},
          {"x_norm_e", r.x_norm_e},
          {"primal_obj", r.primal_obj},
          {"dual_obj", r.dual_obj},
          {"qtilde", {r.qtilde.a, r.qtilde.b, r.qtilde.c}},
          {"wallclock", r.wallclock}};
}

StepMode step_mode_from(const std::string& s) {
  if (s == "qtilde") return StepMode::QTildeMinimizer;
  if (s == "fixed") return StepMode::FixedHalfAlpha;
  throw Error(ErrorKind::ParseError, "unknown step mode '" + s + "'");
}

}  // namespace

std::string export_trace(const SolveResult& result, const TraceHeader& header, TraceFormat format) {
  if (format == TraceFormat::Csv) {
    std::ostringstream out;
    out << "k,alpha,gap,t,x_norm_e,primal_obj,dual_obj,qtilde_a,qtilde_b,qtilde_c,wallclock\n";
    for (const auto& r : result.trace) {
      out << r.k;
      for (const double v : {r.alpha, r.gap, r.t, r.x_norm_e, r.primal_obj, r.dual_obj, r.qtilde.a,
                             r.qtilde.b, r.qtilde.c, r.wallclock}) {
        out << "," << fmt17(v);
      }
      out << "\n";
    }
    return out.str();
  }

  json j;
  j["header"] = {{"instance_id", header.instance_id},
                 {"backend", header.backend},
                 {"alpha", header.alpha},
                 {"kappa", header.kappa},
                 {"beta", header.beta},
                 {"n", header.n},
                 {"m", header.m},
                 {"config",
                  {{"alpha", header.config.alpha},
                   {"gap_tol", header.config.gap_tol},
                   {"max_iters", header.config.max_iters},
                   {"step_mode", to_string(header.config.step_mode)},
                   {"seed", header.config.seed}}}};
  j["rows"] = json::array();
  for (const auto& r : result.trace) j["rows"].push_back(row_json(r));
  j["footer"] = {{"status", to_string(result.status)},
                 {"iterations", static_cast<int>(result.trace.size())},
                 {"final_gap", result.final_gap},
                 {"violations", violations_json(result.violations)}};
  return j.dump(1) + "\n";
}

TraceFile parse_trace_json(const std::string& text) {
  const json j = parse_json(text);
  TraceFile tf;
  try {
    const json& h = j.at("header");
    tf.header.instance_id = h.at("instance_id").get<std::string>();
    tf.header.backend = h.at("backend").get<std::string>();
    tf.header.alpha = h.at("alpha").get<double>();
    tf.header.kappa = h.at("kappa").get<double>();
    tf.header.beta = h.at("beta").get<double>();
    tf.header.n = h.at("n").get<int>();
    tf.header.m = h.at("m").get<int>();
    const json& c = h.at("config");
    tf.header.config.alpha = c.at("alpha").get<double>();
    tf.header.config.gap_tol = c.at("gap_tol").get<double>();
    tf.header.config.max_iters = c.at("max_iters").get<int>();
    tf.header.config.step_mode = step_mode_from(c.at("step_mode").get<std::string>());
    tf.header.config.seed = c.at("seed").get<std::uint64_t>();
    for (const json& r : j.at("rows")) {
      IterationRecord rec;
      rec.k = r.at("k").get<int>();
      rec.alpha = r.at("alpha").get<double>();
      rec.gap = r.at("gap").get<double>();
      rec.t = r.at("t").get<double>();
      rec.x_norm_e = r.at("x_norm_e").get<double>();
      rec.primal_obj = r.at("primal_obj").get<double>();
      rec.dual_obj = r.at("dual_obj").get<double>();
      const json& q = r.at("qtilde");
      rec.qtilde = {q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>()};
      rec.wallclock = r.at("wallclock").get<double>();
      tf.rows.push_back(rec);
    }
    const json& f = j.at("footer");
    tf.status = f.at("status").get<std::string>();
    tf.iterations = f.at("iterations").get<int>();
    tf.final_gap = f.at("final_gap").get<double>();
    const json& v = f.at("violations");
    tf.violations.primal_monotone = v.at("primal_monotone").get<int>();
    tf.violations.dual_monotone = v.at("dual_monotone").get<int>();
    tf.violations.ratio_bound = v.at("ratio_bound").get<int>();
    tf.violations.dual_carry = v.at("dual_carry").get<int>();
    tf.violations.swath = v.at("swath").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return tf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::DomainError, "cannot write '" + path + "'");
  out << content;
}

}  // namespace affscale::io

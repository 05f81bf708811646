#include "podrbf/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "podrbf/errors.hpp"

namespace podrbf {
namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

std::string num(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw FormatError("cannot format number");
  return std::string(buf, end);
}

double parse_num(std::string_view s, const fs::path& path) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw FormatError(path.string() + ": bad number '" + std::string(s) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, mode | std::ios::trunc);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  return os;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw FormatError("cannot open " + path.string());
  return is;
}

std::string join(const Vector& v, char sep = ' ') {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += num(v[i]);
  }
  return s;
}

Vector parse_vector(std::string_view text, const fs::path& path) {
  std::vector<double> vals;
  for (auto tok : split(text, ' ')) {
    if (!tok.empty()) vals.push_back(parse_num(tok, path));
  }
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

class BinaryWriter {
 public:
  explicit BinaryWriter(const fs::path& path) : os_(open_out(path, std::ios::binary)) {}
  template <class T>
  void put(T x) {
    os_.write(reinterpret_cast<const char*>(&x), sizeof x);
  }
  void put_matrix(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) put(m(i, j));
  }
  void put_vector(const Vector& v) {
    put<std::uint64_t>(static_cast<std::uint64_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) put(v[i]);
  }
  void finish(const fs::path& path) {
    os_.flush();
    if (!os_) throw FormatError("write failed: " + path.string());
  }

 private:
  std::ofstream os_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const fs::path& path) : path_(path), is_(open_in(path, std::ios::binary)) {}
  template <class T>
  T get() {
    T x;
    is_.read(reinterpret_cast<char*>(&x), sizeof x);
    if (!is_) throw FormatError(path_.string() + ": truncated file");
    return x;
  }
  void magic(const char* expected) {
    char m[4];
    is_.read(m, 4);
    if (!is_ || std::memcmp(m, expected, 4) != 0) {
      throw FormatError(path_.string() + ": bad magic, expected " + std::string(expected, 4));
    }
  }
  Matrix get_matrix(std::uint64_t rows, std::uint64_t cols) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = get<double>();
    return m;
  }
  Vector get_vector() {
    const auto n = get<std::uint64_t>();
    if (n > (1ULL << 32)) throw FormatError(path_.string() + ": implausible vector length");
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = get<double>();
    return v;
  }
  void expect_end() {
    if (is_.peek() != std::char_traits<char>::eof()) throw FormatError(path_.string() + ": trailing bytes");
  }

 private:
  fs::path path_;
  std::ifstream is_;
};

constexpr std::uint32_t kSurrogateVersion = 1;

}  // namespace

void write_samples_csv(const fs::path& path, const SampleSet& samples) {
  auto os = open_out(path);
  os << "# strategy: " << to_string(samples.strategy) << "\n";
  os << "# seed: " << samples.seed << "\n";
  os << "# lower: " << join(samples.box.lower) << "\n";
  os << "# upper: " << join(samples.box.upper) << "\n";
  for (std::size_t j = 0; j < samples.dim(); ++j) os << (j ? ",b" : "b") << j + 1;
  os << "\n";
  for (Eigen::Index i = 0; i < samples.points.rows(); ++i) os << join(samples.points.row(i).transpose(), ',') << "\n";
}

SampleSet read_samples_csv(const fs::path& path) {
  auto is = open_in(path);
  SampleSet set;
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(2, colon - 2);
      std::string_view value = std::string_view(line).substr(colon + 1);
      while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
      if (key == "strategy") set.strategy = parse_sampling_strategy(value);
      else if (key == "seed") set.seed = std::stoull(std::string(value));
      else if (key == "lower") set.box.lower = parse_vector(value, path);
      else if (key == "upper") set.box.upper = parse_vector(value, path);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    for (auto tok : split(line, ',')) row.push_back(parse_num(tok, path));
    if (!rows.empty() && row.size() != rows.front().size()) throw FormatError(path.string() + ": ragged rows");
    rows.push_back(std::move(row));
  }
  const std::size_t dim = rows.empty() ? static_cast<std::size_t>(set.box.lower.size()) : rows.front().size();
  if (static_cast<std::size_t>(set.box.lower.size()) != dim || static_cast<std::size_t>(set.box.upper.size()) != dim) {
    throw FormatError(path.string() + ": box does not match the point dimension");
  }
  set.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) set.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return set;
}

void write_trajectory_csv(const fs::path& path, const Trajectory& traj) {
  auto os = open_out(path);
  os << "t";
  for (Eigen::Index j = 0; j < traj.states.cols(); ++j) os << ",y" << j + 1;
  for (Eigen::Index j = 0; j < traj.controls.cols(); ++j) os << ",u" << j + 1;
  os << "\n";
  for (Eigen::Index i = 0; i < traj.states.rows(); ++i) {
    os << num(traj.grid.times[i]);
    for (Eigen::Index j = 0; j < traj.states.cols(); ++j) os << ',' << num(traj.states(i, j));
    for (Eigen::Index j = 0; j < traj.controls.cols(); ++j) os << ',' << num(traj.controls(i, j));
    os << "\n";
  }
}

void write_snapshots_csv(const fs::path& path, const SnapshotMatrix& snapshots) {
  auto os = open_out(path);
  os << "# rows: time-major stacking, n_t " << snapshots.stacking.n_t << ", n_y " << snapshots.stacking.n_y << "\n";
  os << "# t0: " << num(snapshots.grid.t0) << ", T: " << num(snapshots.grid.T) << "\n";
  for (Eigen::Index i = 0; i < snapshots.Y.rows(); ++i) os << join(snapshots.Y.row(i).transpose(), ',') << "\n";
}

void write_matrix_binary(const fs::path& path, const Matrix& Y) {
  if (Y.rows() > 0xffffffffLL || Y.cols() > 0xffffffffLL) throw FormatError("matrix too large for the binary format");
  BinaryWriter w(path);
  for (char c : {'S', 'N', 'A', 'P'}) w.put<char>(c);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(Y.rows()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(Y.cols()));
  w.put<std::uint32_t>(0);
  w.put_matrix(Y);
  w.finish(path);
}

Matrix read_matrix_binary(const fs::path& path) {
  BinaryReader r(path);
  r.magic("SNAP");
  const auto rows = r.get<std::uint32_t>();
  const auto cols = r.get<std::uint32_t>();
  if (r.get<std::uint32_t>() != 0) throw FormatError(path.string() + ": nonzero reserved header field");
  Matrix Y = r.get_matrix(rows, cols);
  r.expect_end();
  return Y;
}

void write_spectrum_csv(const fs::path& path, const Vector& sigma) {
  auto os = open_out(path);
  const Vector energy = cumulative_energy(sigma);
  os << "index,sigma,energy\n";
  for (Eigen::Index i = 0; i < sigma.size(); ++i) os << i + 1 << ',' << num(sigma[i]) << ',' << num(energy[i]) << "\n";
}

void write_surrogate(const fs::path& path, const Surrogate& s) {
  BinaryWriter w(path);
  for (char c : {'S', 'U', 'R', 'R'}) w.put<char>(c);
  w.put<std::uint32_t>(kSurrogateVersion);
  w.put<std::uint32_t>(s.coeffs.kind == KernelKind::LinearSpline ? 0u : 1u);
  w.put<std::uint32_t>(0);
  w.put<std::uint64_t>(static_cast<std::uint64_t>(s.phi.rows()));
  w.put<std::uint64_t>(s.k);
  w.put<std::uint64_t>(static_cast<std::uint64_t>(s.coeffs.centers.rows()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(s.coeffs.centers.cols()));
  w.put<std::uint64_t>(s.stacking.n_y);
  w.put<std::uint64_t>(s.stacking.n_t);
  w.put(s.grid.t0);
  w.put(s.grid.T);
  w.put(s.eps_pod);
  w.put(s.coeffs.condition_estimate);
  w.put_matrix(s.phi);
  w.put_matrix(s.coeffs.D);
  w.put_matrix(s.coeffs.centers);
  w.put_vector(s.training_box.lower);
  w.put_vector(s.training_box.upper);
  w.put_vector(s.sigma);
  w.finish(path);
}

Surrogate read_surrogate(const fs::path& path) {
  BinaryReader r(path);
  r.magic("SURR");
  if (r.get<std::uint32_t>() != kSurrogateVersion) throw FormatError(path.string() + ": unsupported version");
  const auto kind = r.get<std::uint32_t>();
  if (kind > 1) throw FormatError(path.string() + ": unknown kernel");
  r.get<std::uint32_t>();
  const auto m = r.get<std::uint64_t>();
  const auto k = r.get<std::uint64_t>();
  const auto n_s = r.get<std::uint64_t>();
  const auto dim = r.get<std::uint64_t>();
  const auto n_y = r.get<std::uint64_t>();
  const auto n_t = r.get<std::uint64_t>();
  if (n_y * n_t != m || k > n_s || m > (1ULL << 32) || n_s > (1ULL << 24) || dim > (1ULL << 16)) {
    throw FormatError(path.string() + ": inconsistent header");
  }
  Surrogate s;
  const double t0 = r.get<double>();
  const double T = r.get<double>();
  s.grid = make_grid(t0, T, n_t);
  s.stacking = Stacking{n_y, n_t};
  s.eps_pod = r.get<double>();
  s.coeffs.condition_estimate = r.get<double>();
  s.coeffs.kind = kind == 0 ? KernelKind::LinearSpline : KernelKind::CubicSpline;
  s.k = k;
  s.phi = r.get_matrix(m, k);
  s.coeffs.D = r.get_matrix(k, n_s);
  s.coeffs.centers = r.get_matrix(n_s, dim);
  Vector lo = r.get_vector();
  Vector hi = r.get_vector();
  s.training_box = Box(lo, hi);
  s.sigma = r.get_vector();
  r.expect_end();
  return s;
}

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Box& box) { return {{"lower", to_json(box.lower)}, {"upper", to_json(box.upper)}}; }

json to_json(const ErrorReport& r) {
  return {{"r2", r.r2},     {"mae", r.mae},   {"mxae", r.mxae},
          {"rmae", r.rmae}, {"n_g", r.n_g},   {"worst_point", r.worst_point},
          {"worst_entry", r.worst_entry}};
}

json to_json(const OptResult& r, bool deterministic) {
  json hist = json::array();
  for (const auto& h : r.history) {
    hist.push_back({{"penalty", h.penalty}, {"objective", h.objective}, {"violation", h.violation}, {"x", to_json(h.x)}});
  }
  return {{"b_star", to_json(r.b_star)},
          {"f_star", r.f_star},
          {"constraints", to_json(r.constraints)},
          {"constraint_violation", r.constraint_violation},
          {"evals", r.evals},
          {"converged", r.converged},
          {"status", std::string(to_string(r.status))},
          {"wall_time", deterministic ? 0.0 : r.wall_time},
          {"history", hist}};
}

json to_json(const CriterionValues& v) { return {{"psi0", v.psi0}, {"psis", to_json(v.psis)}}; }

json to_json(const RefineResult& r, bool deterministic) {
  json its = json::array();
  for (std::size_t i = 0; i < r.iterations.size(); ++i) {
    const auto& it = r.iterations[i];
    its.push_back({{"iteration", i + 1},
                   {"bounds", to_json(it.bounds)},
                   {"training_box", to_json(it.training_box)},
                   {"k", it.k},
                   {"surrogate_optimum", to_json(it.result, deterministic)},
                   {"original", to_json(it.original)},
                   {"surrogate", to_json(it.approximation)},
                   {"eps", it.eps},
                   {"construction_time", deterministic ? 0.0 : it.construction_time},
                   {"optimization_time", deterministic ? 0.0 : it.optimization_time}});
  }
  json doc = {{"converged", r.converged},
              {"selected_iteration", r.selected + 1},
              {"b_star", to_json(r.b_star)},
              {"iterations", its},
              {"time_construction", deterministic ? 0.0 : r.construction_time},
              {"time_surrogate", deterministic ? 0.0 : r.surrogate_time},
              {"time_original", deterministic ? 0.0 : r.original_time}};
  doc["reference"] = r.reference ? to_json(*r.reference, deterministic) : json(nullptr);
  return doc;
}

void write_json(const fs::path& path, const json& doc) {
  auto os = open_out(path);
  os << doc.dump(2) << "\n";
}

}  // namespace podrbf

#include "binopt/instances.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "binopt/errors.hpp"
#include "binopt/rng.hpp"

namespace binopt {

namespace {

constexpr Index kLargeScale = 10000;

DenseMatrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  DenseMatrix out(rows, cols);
  // Row-major fill order so the draw sequence does not depend on Eigen's layout.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.normal();
  return out;
}

Vector gaussian_vector(Rng& rng, Index size) {
  Vector out(size);
  for (Index i = 0; i < size; ++i) out[i] = rng.normal();
  return out;
}

// Column scaling used for Gaussian measurement matrices: 1/sqrt(m) up to n = 10^4.
double normalization(Index m, Index n) {
  return n <= kLargeScale ? std::sqrt(static_cast<double>(m)) : 1.0;
}

double snr_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Reads the next line that is not blank; returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) return true;
  }
  return false;
}

QuboInstance parse_triplet_block(std::istream& in, std::size_t& line_no, const std::string& name,
                                 const BestKnownTable& table) {
  std::string line;
  if (!next_data_line(in, line, line_no)) throw ParseError("missing 'n nnz' header", line_no + 1);
  std::istringstream header(line);
  long long n = -1, nnz = -1;
  std::string extra;
  if (!(header >> n >> nnz) || (header >> extra) || n <= 0 || nnz < 0)
    throw ParseError("expected header 'n nnz' with n > 0, nnz >= 0", line_no);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nnz) * 2);
  for (long long k = 0; k < nnz; ++k) {
    if (!next_data_line(in, line, line_no))
      throw ParseError(fmt::format("expected {} triplets, found {}", nnz, k), line_no + 1);
    std::istringstream row(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(row >> i >> j >> v) || (row >> extra))
      throw ParseError("expected triplet 'i j value'", line_no);
    if (i < 1 || j < 1 || i > n || j > n)
      throw ParseError(fmt::format("index ({}, {}) outside 1..{}", i, j, n), line_no);
    // Q = -(Qt + Qt^T): each listed entry contributes to (i,j) and (j,i).
    triplets.emplace_back(i - 1, j - 1, -v);
    triplets.emplace_back(j - 1, i - 1, -v);
  }
  SparseMatrix q(n, n);
  q.setFromTriplets(triplets.begin(), triplets.end());
  q.makeCompressed();

  QuboInstance inst;
  const double density = static_cast<double>(q.nonZeros()) / (static_cast<double>(n) * n);
  if (n <= 2000 || density > 0.25)
    inst.q = Matrix(DenseMatrix(q));
  else
    inst.q = Matrix(std::move(q));
  inst.source.kind = QuboSource::Kind::Beasley;
  inst.source.name = name;
  if (auto it = table.find(name); it != table.end()) inst.best_known = -it->second;
  return inst;
}

}  // namespace

// --- generators ---------------------------------------------------------------

RecoveryInstance gen_recovery(Index m, Index n, Index s, double q, double nf, std::uint64_t seed) {
  if (m <= 0 || n <= 0) throw ParameterError("recovery sizes must be positive");
  if (s <= 0 || s > n) throw ParameterError("support size must satisfy 0 < s <= n");
  if (!(q > 1.0)) throw ParameterError("recovery requires q > 1");
  if (!(nf >= 0.0)) throw ParameterError("noise factor must be nonnegative");

  const Rng root(seed, "recovery");
  Rng a_rng = root.split("A");
  Rng support_rng = root.split("support");
  Rng noise_rng = root.split("noise");

  DenseMatrix a = gaussian_matrix(a_rng, m, n) / normalization(m, n);
  Vector x_star = Vector::Zero(n);
  for (std::size_t idx : support_rng.sample_without_replacement(static_cast<std::size_t>(n),
                                                                 static_cast<std::size_t>(s)))
    x_star[static_cast<Index>(idx)] = 1.0;
  Vector b = a * x_star;
  if (nf > 0.0) b += nf * gaussian_vector(noise_rng, m);

  RecoveryInstance inst;
  inst.a = Matrix::choose_storage(std::move(a));
  inst.b = std::move(b);
  inst.x_star = std::move(x_star);
  inst.s = s;
  inst.q = q;
  inst.nf = nf;
  inst.seed = seed;
  return inst;
}

DenseMatrix correlation_matrix(Index size, double r) {
  DenseMatrix out(size, size);
  for (Index i = 0; i < size; ++i)
    for (Index j = 0; j < size; ++j)
      out(i, j) = std::pow(r, static_cast<double>(std::abs(i - j)));
  return out;
}

DenseMatrix correlation_factor(const DenseMatrix& r) {
  Eigen::LLT<DenseMatrix> llt(r);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(r);
  if (eig.info() != Eigen::Success) throw InstanceError("correlation matrix factorization failed");
  const Vector& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-10 * scale)
    throw InstanceError("correlation matrix is not positive semidefinite");
  return eig.eigenvectors() * ev.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

DenseMatrix stack_complex(const DenseMatrix& re, const DenseMatrix& im) {
  const Index m = re.rows(), n = re.cols();
  DenseMatrix a(2 * m, 2 * n);
  a.topLeftCorner(m, n) = re;
  a.topRightCorner(m, n) = -im;
  a.bottomLeftCorner(m, n) = im;
  a.bottomRightCorner(m, n) = re;
  return a;
}

MimoInstance gen_mimo(Index m, Index n, double snr_db, ChannelModel channel, std::uint64_t seed) {
  if (m <= 0 || n <= 0) throw ParameterError("MIMO sizes must be positive");
  if (channel.kind == ChannelModel::Kind::Correlated && !(std::abs(channel.r) <= 1.0))
    throw ParameterError("channel correlation must satisfy |r| <= 1");

  const Rng root(seed, "mimo");
  Rng h_rng = root.split("H");
  Rng w_rng = root.split("symbols");
  Rng noise_rng = root.split("noise");

  const double c = normalization(m, n);
  DenseMatrix h_re = gaussian_matrix(h_rng, m, n) / c;
  DenseMatrix h_im = gaussian_matrix(h_rng, m, n) / c;
  if (channel.kind == ChannelModel::Kind::Correlated) {
    const DenseMatrix p = correlation_factor(correlation_matrix(m, channel.r));
    const DenseMatrix qf = correlation_factor(correlation_matrix(n, channel.r));
    h_re = p * h_re * qf;
    h_im = p * h_im * qf;
  }

  Vector w_re(n), w_im(n);
  for (Index j = 0; j < n; ++j) {
    w_re[j] = w_rng.bernoulli(0.5) ? 1.0 : 0.0;
    w_im[j] = w_rng.bernoulli(0.5) ? 1.0 : 0.0;
  }
  const Vector hw_re = h_re * w_re - h_im * w_im;
  const Vector hw_im = h_re * w_im + h_im * w_re;
  const double signal = hw_re.squaredNorm() + hw_im.squaredNorm();
  const double rho = std::sqrt(signal / (static_cast<double>(m) * snr_linear(snr_db)));

  // Complex noise with total variance rho^2 per entry.
  const double part = rho / std::sqrt(2.0);
  const Vector e_re = part * gaussian_vector(noise_rng, m);
  const Vector e_im = part * gaussian_vector(noise_rng, m);

  MimoInstance inst;
  inst.a = Matrix::choose_storage(stack_complex(h_re, h_im));
  inst.b.resize(2 * m);
  inst.b << hw_re + e_re, hw_im + e_im;
  inst.x_star.resize(2 * n);
  inst.x_star << w_re, w_im;
  inst.m = m;
  inst.n = n;
  inst.snr_db = snr_db;
  inst.rho = rho;
  inst.channel = channel;
  inst.seed = seed;
  return inst;
}

Vector sign_observations(const Matrix& h, const Vector& z, const Vector& v) {
  Vector y = h * z + v;
  for (double& yi : y) yi = yi >= 0.0 ? 1.0 : -1.0;
  return y;
}

OneBitInstance gen_onebit(Index m, Index n, double snr_db, std::uint64_t seed) {
  if (m <= 0 || n <= 0) throw ParameterError("one-bit sizes must be positive");
  const Rng root(seed, "onebit");
  Rng h_rng = root.split("H");
  Rng z_rng = root.split("symbols");
  Rng noise_rng = root.split("noise");

  Matrix h = Matrix::choose_storage(gaussian_matrix(h_rng, m, n));
  Vector z(n);
  for (Index j = 0; j < n; ++j) z[j] = z_rng.bernoulli(0.5) ? 1.0 : -1.0;
  const double signal = (h * z).squaredNorm();
  const double rho = std::sqrt(signal / (static_cast<double>(m) * snr_linear(snr_db)));
  const Vector v = rho * gaussian_vector(noise_rng, m);

  OneBitInstance inst;
  inst.y = sign_observations(h, z, v);
  inst.h = std::move(h);
  inst.z_star = std::move(z);
  inst.rho = rho;
  inst.snr_db = snr_db;
  inst.seed = seed;
  return inst;
}

double qubo_case_fraction(int case_id) {
  switch (case_id) {
    case 1: return 0.4995;
    case 2: return 0.4999;
    case 3: return 0.49995;
    case 4: return 0.49999;
    case 5: return 0.5;
    default: throw ParameterError(fmt::format("QUBO case must be 1..5, got {}", case_id));
  }
}

QuboInstance gen_qubo_synthetic(Index n, int case_id, std::uint64_t seed) {
  if (n <= 0) throw ParameterError("QUBO size must be positive");
  const double fraction = qubo_case_fraction(case_id);
  const double density = n < kLargeScale ? 0.8 : 0.005;
  constexpr double kLo = 10.0, kHi = 100.0;

  Rng rng(seed, "qubo-synthetic");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(density * static_cast<double>(n) * (n + 1)) + 16);

  // Walk the upper triangle (diagonal included) in row-major order, jumping
  // geometric gaps between successive nonzeros.
  const double log_miss = std::log1p(-density);
  const long long total = static_cast<long long>(n) * (n + 1) / 2;
  long long pos = -1;
  Index row = 0;
  long long row_start = 0;  // linear index of (row, row)
  while (true) {
    const double u = 1.0 - rng.uniform();  // in (0, 1]
    pos += 1 + static_cast<long long>(std::floor(std::log(u) / log_miss));
    if (pos >= total) break;
    while (pos >= row_start + (n - row)) {
      row_start += n - row;
      ++row;
    }
    const Index col = row + static_cast<Index>(pos - row_start);
    const double magnitude = rng.uniform(kLo, kHi);
    const double value = rng.bernoulli(fraction) ? magnitude : -magnitude;
    triplets.emplace_back(row, col, value);
    if (col != row) triplets.emplace_back(col, row, value);
  }
  SparseMatrix q(n, n);
  q.setFromTriplets(triplets.begin(), triplets.end());
  q.makeCompressed();

  QuboInstance inst;
  if (n <= 2000 || density > 0.25)
    inst.q = Matrix(DenseMatrix(q));
  else
    inst.q = Matrix(std::move(q));
  inst.source = {QuboSource::Kind::Synthetic, fmt::format("synthetic-n{}-case{}", n, case_id),
                 density, kLo, kHi, fraction, case_id, seed};
  return inst;
}

// --- Beasley / ORLIB ------------------------------------------------------------

BestKnownTable read_best_known(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open best-known table " + path.string());
  BestKnownTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos) throw ParseError("expected 'name<TAB>value'", line_no);
    try {
      table[trim(t.substr(0, tab))] = std::stod(t.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError("invalid best-known value", line_no);
    }
  }
  return table;
}

std::filesystem::path bundled_beasley_dir() {
  return std::filesystem::path(BINOPT_DATA_DIR) / "beasley";
}

const BestKnownTable& bundled_best_known() {
  static const BestKnownTable table = [] {
    const auto path = bundled_beasley_dir() / "best_known.tsv";
    return std::filesystem::exists(path) ? read_best_known(path) : BestKnownTable{};
  }();
  return table;
}

QuboInstance parse_beasley_stream(std::istream& in, const std::string& name,
                                  const BestKnownTable& table) {
  std::size_t line_no = 0;
  QuboInstance inst = parse_triplet_block(in, line_no, name, table);
  std::string rest;
  if (next_data_line(in, rest, line_no)) throw ParseError("unexpected trailing data", line_no);
  return inst;
}

QuboInstance parse_beasley(const std::filesystem::path& path, const BestKnownTable& table) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path.string());
  std::string name = path.filename().string();
  if (path.extension() == ".txt") name = path.stem().string();
  try {
    return parse_beasley_stream(in, name, table);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<QuboInstance> parse_beasley_collection(const std::filesystem::path& path,
                                                   const BestKnownTable& table) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path.string());
  const std::string stem = path.stem().string();
  std::size_t line_no = 0;
  std::string line;
  if (!next_data_line(in, line, line_no)) throw ParseError(path.string() + ": empty file");
  long long count = 0;
  std::istringstream header(line);
  std::string extra;
  if (!(header >> count) || (header >> extra) || count <= 0)
    throw ParseError(path.string() + ": expected instance count", line_no);
  std::vector<QuboInstance> out;
  for (long long k = 1; k <= count; ++k) {
    try {
      out.push_back(parse_triplet_block(in, line_no, fmt::format("{}-{}", stem, k), table));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  return out;
}

QuboInstance load_beasley(const std::string& name, const std::filesystem::path& dir) {
  for (const auto& candidate : {dir / name, dir / (name + ".txt")})
    if (std::filesystem::is_regular_file(candidate)) return parse_beasley(candidate);
  const auto dash = name.rfind('-');
  if (dash != std::string::npos) {
    const auto collection = dir / (name.substr(0, dash) + ".txt");
    if (std::filesystem::is_regular_file(collection)) {
      for (auto& inst : parse_beasley_collection(collection))
        if (inst.source.name == name) return std::move(inst);
    }
  }
  throw InstanceError("Beasley instance '" + name + "' not found in " + dir.string());
}

void write_beasley(std::ostream& out, const Matrix& q) {
  if (q.rows() != q.cols()) throw ParameterError("QUBO matrix must be square");
  std::vector<std::tuple<Index, Index, double>> entries;
  q.for_each_entry([&](Index i, Index j, double v) {
    if (v == 0.0 || j < i) return;
    // Upper triangle of Qt with -(Qt + Qt^T) = Q.
    entries.emplace_back(i, j, i == j ? -0.5 * v : -v);
  });
  out << q.rows() << ' ' << entries.size() << '\n';
  for (const auto& [i, j, v] : entries) out << fmt::format("{} {} {}\n", i + 1, j + 1, v);
}

}  // namespace binopt

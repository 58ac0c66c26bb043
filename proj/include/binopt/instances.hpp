#pragma once

// Problem instances for the three experiment families and their generators.
//
// Generators are pure functions of their arguments, seed included: the same
// call replays bit-identical data. Each generator derives independent named
// streams (matrix, support, noise, ...) from the seed, so e.g. changing the
// noise level leaves the measurement matrix untouched.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "binopt/matrix.hpp"
#include "binopt/types.hpp"

namespace binopt {

struct RecoveryInstance {
  Matrix a;
  Vector b;
  Vector x_star;  ///< binary ground truth with exactly s ones
  Index s = 0;
  double q = 2.0;
  double nf = 0.0;
  std::uint64_t seed = 0;
};

struct ChannelModel {
  enum class Kind { Iid, Correlated };
  Kind kind = Kind::Iid;
  double r = 0.0;  ///< correlation coefficient, |r| <= 1 (Correlated only)

  static ChannelModel iid() { return {}; }
  static ChannelModel correlated(double r) { return {Kind::Correlated, r}; }
};

/// Complex MIMO detection in real-stacked form:
///   A = [[Re H, -Im H], [Im H, Re H]], b = [Re y; Im y], x* = [Re w*; Im w*].
struct MimoInstance {
  Matrix a;
  Vector b;
  Vector x_star;
  Index m = 0;  ///< receive antennas (complex rows)
  Index n = 0;  ///< transmit antennas (complex columns)
  double snr_db = 0.0;
  double rho = 0.0;  ///< complex noise standard deviation
  ChannelModel channel;
  std::uint64_t seed = 0;
};

struct OneBitInstance {
  Matrix h;
  Vector y;       ///< +-1 observations
  Vector z_star;  ///< +-1 transmitted signal
  double rho = 0.0;
  double snr_db = 0.0;
  std::uint64_t seed = 0;

  /// Ground truth in the box variable, (z* + 1) / 2.
  Vector x_star() const { return (z_star.array() + 1.0).matrix() / 2.0; }
};

struct QuboSource {
  enum class Kind { Beasley, Synthetic, File };
  Kind kind = Kind::Synthetic;
  std::string name;  ///< Beasley instance name or file path
  double density = 0.0;
  double value_lo = 0.0;
  double value_hi = 0.0;
  double nonneg_fraction = 0.0;
  int case_id = 0;
  std::uint64_t seed = 0;
};

struct QuboInstance {
  Matrix q;  ///< symmetric; objective is 1/2 <x, Qx>
  QuboSource source;
  std::optional<double> best_known;  ///< best-known minimum of 1/2 <x, Qx>
};

RecoveryInstance gen_recovery(Index m, Index n, Index s, double q, double nf, std::uint64_t seed);

MimoInstance gen_mimo(Index m, Index n, double snr_db, ChannelModel channel, std::uint64_t seed);

OneBitInstance gen_onebit(Index m, Index n, double snr_db, std::uint64_t seed);

/// y = sgn(H z + v) with sgn(0) = +1.
Vector sign_observations(const Matrix& h, const Vector& z, const Vector& v);

/// Fraction of nonnegative entries for synthetic QUBO cases 1..5.
double qubo_case_fraction(int case_id);

/// Symmetric Q with density 0.8 (n < 10^4) or 0.005 (n >= 10^4), magnitudes
/// uniform on [10, 100], signs drawn so the nonnegative share matches the case.
/// The diagonal takes part in the density draw.
QuboInstance gen_qubo_synthetic(Index n, int case_id, std::uint64_t seed);

/// Receiver/transmitter correlation R_ij = r^{|i-j|} (real r).
DenseMatrix correlation_matrix(Index size, double r);

/// A factor P with P P^T = R; Cholesky, falling back to a clipped eigen
/// factorization for singular PSD input. Throws InstanceError if R is not PSD.
DenseMatrix correlation_factor(const DenseMatrix& r);

/// Real-stacks a complex matrix given by its parts.
DenseMatrix stack_complex(const DenseMatrix& re, const DenseMatrix& im);

// --- Beasley / ORLIB --------------------------------------------------------

/// name -> best-known value of the original maximization problem.
using BestKnownTable = std::map<std::string, double>;

/// Parses a "name<TAB>value" table; '#' starts a comment line.
BestKnownTable read_best_known(const std::filesystem::path& path);

/// The table bundled under data/beasley/.
const BestKnownTable& bundled_best_known();

std::filesystem::path bundled_beasley_dir();

/// One instance in ORLIB triplet form: "n nnz" then nnz lines "i j value"
/// (1-indexed). The maximization of x^T Qt x becomes min 1/2 <x, Qx> with
/// Q = -(Qt + Qt^T); best_known is attached (sign-converted) when `name` is
/// in the table.
QuboInstance parse_beasley(const std::filesystem::path& path,
                           const BestKnownTable& table = bundled_best_known());

/// Same as parse_beasley but from an in-memory stream; `name` keys the table.
QuboInstance parse_beasley_stream(std::istream& in, const std::string& name,
                                  const BestKnownTable& table = bundled_best_known());

/// An ORLIB collection file (first line: instance count, then that many
/// triplet blocks). Instance k (1-based) is named "<stem>-k".
std::vector<QuboInstance> parse_beasley_collection(const std::filesystem::path& path,
                                                   const BestKnownTable& table = bundled_best_known());

/// Resolves a name like "bqp100-3" inside `dir`: a single-instance file
/// "<name>" or "<name>.txt", else the collection "bqp100.txt". Throws
/// InstanceError when nothing matches.
QuboInstance load_beasley(const std::string& name, const std::filesystem::path& dir);

/// Writes Q in ORLIB triplet form such that parse_beasley reproduces it exactly.
void write_beasley(std::ostream& out, const Matrix& q);

}  // namespace binopt

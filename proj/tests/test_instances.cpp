#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "binopt/errors.hpp"
#include "binopt/instances.hpp"
#include "binopt/objectives.hpp"
#include "binopt/serialization.hpp"

using namespace binopt;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("binopt_test_" + name);
}

bool same(const Matrix& a, const Matrix& b) { return a.to_dense() == b.to_dense(); }

}  // namespace

TEST_CASE("recovery generator") {
  const RecoveryInstance r = gen_recovery(4, 4, 2, 2.0, 0.0, 17);
  CHECK(r.x_star.sum() == 2.0);
  CHECK((r.a * r.x_star - r.b).norm() == 0.0);
  for (double q : {1.5, 2.0, 3.0}) {
    const RecoveryInstance rq = gen_recovery(6, 10, 3, q, 0.0, 5);
    CHECK(LqRecoveryObjective(rq.a, rq.b, q).value(rq.x_star) == 0.0);
  }

  const RecoveryInstance again = gen_recovery(4, 4, 2, 2.0, 0.0, 17);
  CHECK(same(r.a, again.a));
  CHECK(r.b == again.b);
  CHECK(r.x_star == again.x_star);

  // Noise comes from its own stream: A and x* do not move with nf.
  const RecoveryInstance noisy = gen_recovery(4, 4, 2, 2.0, 0.3, 17);
  CHECK(same(r.a, noisy.a));
  CHECK(r.x_star == noisy.x_star);
  CHECK(r.b != noisy.b);

  CHECK_THROWS_AS(gen_recovery(4, 4, 0, 2.0, 0.0, 1), ParameterError);
  CHECK_THROWS_AS(gen_recovery(4, 4, 5, 2.0, 0.0, 1), ParameterError);
  CHECK_THROWS_AS(gen_recovery(4, 4, 2, 1.0, 0.0, 1), ParameterError);
  CHECK_THROWS_AS(gen_recovery(4, 4, 2, 2.0, -0.1, 1), ParameterError);
}

TEST_CASE("recovery normalization switches at n = 10000") {
  auto variance = [](const Matrix& a) {
    const DenseMatrix d = a.to_dense();
    return d.array().square().mean();
  };
  const RecoveryInstance small = gen_recovery(50, 1000, 10, 2.0, 0.0, 3);
  CHECK(variance(small.a) == doctest::Approx(1.0 / 50.0).epsilon(0.05));
  const RecoveryInstance large = gen_recovery(4, 20000, 10, 2.0, 0.0, 3);
  CHECK(variance(large.a) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("complex stacking") {
  DenseMatrix re(2, 1), im(2, 1);
  re << 1, 2;
  im << 3, 4;
  DenseMatrix expect(4, 2);
  expect << 1, -3, 2, -4, 3, 1, 4, 2;
  CHECK(stack_complex(re, im) == expect);
}

TEST_CASE("mimo generator") {
  const MimoInstance inst = gen_mimo(6, 3, 15.0, ChannelModel::iid(), 4);
  CHECK(inst.a.rows() == 12);
  CHECK(inst.a.cols() == 6);
  for (double v : inst.x_star) CHECK((v == 0.0 || v == 1.0));
  const DenseMatrix a = inst.a.to_dense();
  CHECK(a.topLeftCorner(6, 3) == a.bottomRightCorner(6, 3));
  CHECK(a.topRightCorner(6, 3) == -a.bottomLeftCorner(6, 3));
  CHECK(validate_instance(inst).empty());

  // r = 0 gives identity correlation, so the channel matches the i.i.d. one.
  const MimoInstance corr0 = gen_mimo(6, 3, 15.0, ChannelModel::correlated(0.0), 4);
  CHECK((corr0.a.to_dense() - a).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(correlation_matrix(3, 0.2)(0, 2) == doctest::Approx(0.04));
  const DenseMatrix r = correlation_matrix(5, 0.2);
  const DenseMatrix p = correlation_factor(r);
  CHECK((p * p.transpose() - r).cwiseAbs().maxCoeff() < 1e-12);
  DenseMatrix bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(correlation_factor(bad), InstanceError);
}

TEST_CASE("mimo noise level matches the requested SNR") {
  const double snr_db = 10.0;
  double sum = 0.0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const MimoInstance inst = gen_mimo(64, 8, snr_db, ChannelModel::iid(), 1000 + k);
    const Vector signal = inst.a * inst.x_star;
    sum += signal.squaredNorm() / (inst.b - signal).squaredNorm();
  }
  CHECK(sum / draws == doctest::Approx(std::pow(10.0, snr_db / 10.0)).epsilon(0.05));
}

TEST_CASE("one-bit generator") {
  const OneBitInstance quiet = gen_onebit(40, 8, 200.0, 6);
  const Vector hz = quiet.h * quiet.z_star;
  for (Index i = 0; i < 40; ++i) CHECK(quiet.y[i] == (hz[i] >= 0 ? 1.0 : -1.0));
  CHECK(validate_instance(quiet).empty());

  const Vector zero_noise = Vector::Zero(40);
  const Vector y1 = sign_observations(quiet.h, quiet.z_star, zero_noise);
  const Vector y2 = sign_observations(quiet.h, -quiet.z_star, zero_noise);
  for (Index i = 0; i < 40; ++i)
    if (hz[i] != 0.0) CHECK(y1[i] == -y2[i]);

  DenseMatrix zero_h = DenseMatrix::Zero(1, 1);
  CHECK(sign_observations(Matrix(zero_h), Vector::Ones(1), Vector::Zero(1))[0] == 1.0);
  CHECK(quiet.x_star() == (quiet.z_star.array() + 1.0).matrix() / 2.0);
}

TEST_CASE("synthetic QUBO statistics") {
  for (int c = 1; c <= 5; ++c) CHECK(qubo_case_fraction(c) > 0.49);
  CHECK(qubo_case_fraction(5) == 0.5);
  CHECK_THROWS_AS(qubo_case_fraction(6), ParameterError);

  const QuboInstance inst = gen_qubo_synthetic(100, 5, 12);
  CHECK(inst.q.is_symmetric());
  const DenseMatrix q = inst.q.to_dense();
  int nonzero = 0, off_nonzero = 0, off_nonneg = 0;
  for (Index i = 0; i < 100; ++i) {
    for (Index j = i; j < 100; ++j) {
      if (q(i, j) == 0.0) continue;
      ++nonzero;
      const double mag = std::abs(q(i, j));
      CHECK(mag >= 10.0);
      CHECK(mag <= 100.0);
      if (i != j) {
        ++off_nonzero;
        if (q(i, j) >= 0.0) ++off_nonneg;
      }
    }
  }
  const double cells = 100.0 * 101.0 / 2.0;
  const double density = nonzero / cells;
  CHECK(std::abs(density - 0.8) <= 3.0 * std::sqrt(0.8 * 0.2 / cells));
  const double frac = static_cast<double>(off_nonneg) / off_nonzero;
  CHECK(std::abs(frac - 0.5) <= 3.0 * std::sqrt(0.25 / off_nonzero));

  CHECK(same(inst.q, gen_qubo_synthetic(100, 5, 12).q));
}

TEST_CASE("Beasley triplets") {
  std::istringstream one("2 1\n1 2 5\n");
  const QuboInstance inst = parse_beasley_stream(one, "tiny", {});
  const DenseMatrix q = inst.q.to_dense();
  CHECK(q(0, 1) == -5.0);
  CHECK(q(1, 0) == -5.0);
  CHECK(q(0, 0) == 0.0);
  CHECK(q(1, 1) == 0.0);
  CHECK_FALSE(inst.best_known.has_value());

  // Maximum of x^T Qt x over binaries is 5 at (1,1); the minimization value is -5.
  const Vector ones = Vector::Ones(2);
  CHECK(QuboObjective(inst.q).value(ones) == -5.0);

  std::istringstream named("2 1\n1 1 3\n");
  const QuboInstance with_best = parse_beasley_stream(named, "toy-1", {{"toy-1", 3.0}});
  REQUIRE(with_best.best_known.has_value());
  CHECK(*with_best.best_known == -3.0);
  CHECK(QuboObjective(with_best.q).value(Vector::Ones(2)) == doctest::Approx(-3.0));

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_beasley_stream(in, "x", {});
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("2 2\n1 2 5\n1 x 3\n") == 3);
  CHECK(line_of("2 1\n1 3 5\n") == 2);
  CHECK(line_of("2 2\n1 2 5\n") == 3);
  CHECK(line_of("two 1\n") == 1);
  CHECK(line_of("2 1\n1 2 5\n9 9 9\n") == 3);
}

TEST_CASE("Beasley best-known table and collections") {
  const auto& table = bundled_best_known();
  REQUIRE(table.count("bqp100-1") == 1);
  CHECK(table.at("bqp100-1") == 7970.0);
  CHECK(table.size() == 30);

  const auto dir = temp_path("beasley_dir");
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "toy.txt");
    out << "2\n2 1\n1 2 4\n3 2\n1 1 1\n2 3 -2\n";
  }
  const auto all = parse_beasley_collection(dir / "toy.txt", {});
  REQUIRE(all.size() == 2);
  CHECK(all[0].source.name == "toy-1");
  CHECK(all[1].q.rows() == 3);
  const QuboInstance second = load_beasley("toy-2", dir);
  CHECK(second.q.to_dense()(1, 2) == 2.0);
  CHECK_THROWS_AS(load_beasley("toy-9", dir), InstanceError);
  CHECK_THROWS_AS(load_beasley("bqp100-1", dir), InstanceError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("Beasley export reparses to the same matrix") {
  const QuboInstance inst = gen_qubo_synthetic(30, 2, 99);
  std::stringstream buf;
  write_beasley(buf, inst.q);
  const QuboInstance back = parse_beasley_stream(buf, "roundtrip", {});
  CHECK(same(inst.q, back.q));
}

TEST_CASE("native files round-trip bit for bit") {
  const std::vector<AnyInstance> all{
      gen_qubo_synthetic(12, 3, 1), gen_recovery(5, 9, 2, 1.5, 0.2, 2),
      gen_mimo(4, 2, 5.0, ChannelModel::correlated(0.2), 3), gen_onebit(6, 3, 10.0, 4)};
  for (const auto& inst : all) {
    const auto path = temp_path(instance_type_name(inst) + ".json");
    write_instance(path, inst);
    const AnyInstance back = read_instance(path);
    CHECK(back.index() == inst.index());
    CHECK(to_json_string(back) == to_json_string(inst));
    CHECK(validate_instance(back).empty());
    std::filesystem::remove(path);
  }
  CHECK(base64_decode(base64_encode("binopt\x01\x02")) == "binopt\x01\x02");
  CHECK(base64_encode("") == "");
}

TEST_CASE("schema and invariant errors") {
  CHECK_THROWS_AS(from_json_string("{\"format\": \"other\"}"), InstanceError);
  CHECK_THROWS_AS(from_json_string("not json"), InstanceError);
  CHECK_THROWS_AS(read_instance(temp_path("missing.json")), InstanceError);

  QuboInstance lopsided;
  DenseMatrix q(2, 2);
  q << 0, 1, 2, 0;
  lopsided.q = Matrix(q);
  CHECK_FALSE(validate_instance(lopsided).empty());

  RecoveryInstance r = gen_recovery(4, 4, 2, 2.0, 0.0, 1);
  r.x_star[0] = 0.5;
  CHECK_FALSE(validate_instance(r).empty());

  OneBitInstance o = gen_onebit(5, 2, 10.0, 1);
  o.y[0] = 0.0;
  CHECK_FALSE(validate_instance(o).empty());
}

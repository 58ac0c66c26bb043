#include "binopt/serialization.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "binopt/errors.hpp"

namespace binopt {

static_assert(std::endian::native == std::endian::little, "payload encoding assumes little-endian");

namespace {

using nlohmann::json;

constexpr int kVersion = 1;

template <class T>
std::string pack(const T* data, std::size_t count) {
  std::string bytes(count * sizeof(T), '\0');
  if (count != 0) std::memcpy(bytes.data(), data, bytes.size());
  return base64_encode(bytes);
}

template <class T>
std::vector<T> unpack(const json& node, std::size_t expected, const char* what) {
  const std::string bytes = base64_decode(node.get<std::string>());
  if (bytes.size() != expected * sizeof(T))
    throw ParseError(fmt::format("{}: payload has {} bytes, expected {}", what, bytes.size(),
                                 expected * sizeof(T)));
  std::vector<T> out(expected);
  if (expected != 0) std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

json vector_to_json(const Vector& v) {
  return {{"size", v.size()}, {"encoding", "base64-f64le"}, {"data", pack(v.data(), v.size())}};
}

Vector vector_from_json(const json& node) {
  const auto size = node.at("size").get<std::size_t>();
  const auto values = unpack<double>(node.at("data"), size, "vector");
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(size));
}

json matrix_to_json(const Matrix& m) {
  json out{{"rows", m.rows()}, {"cols", m.cols()}};
  if (!m.is_sparse()) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const RowMajor rm = std::get<DenseMatrix>(m.storage());
    out["storage"] = "dense";
    out["encoding"] = "base64-f64le";
    out["data"] = pack(rm.data(), static_cast<std::size_t>(rm.size()));
    return out;
  }
  SparseMatrix s = std::get<SparseMatrix>(m.storage());
  s.makeCompressed();
  std::vector<std::int64_t> indptr(s.outerIndexPtr(), s.outerIndexPtr() + s.outerSize() + 1);
  std::vector<std::int64_t> indices(s.innerIndexPtr(), s.innerIndexPtr() + s.nonZeros());
  out["storage"] = "csr";
  out["nnz"] = s.nonZeros();
  out["indptr"] = pack(indptr.data(), indptr.size());
  out["indices"] = pack(indices.data(), indices.size());
  out["values"] = pack(s.valuePtr(), static_cast<std::size_t>(s.nonZeros()));
  return out;
}

Matrix matrix_from_json(const json& node) {
  const auto rows = node.at("rows").get<Index>();
  const auto cols = node.at("cols").get<Index>();
  if (rows < 0 || cols < 0) throw ParseError("matrix dimensions must be nonnegative");
  const std::string storage = node.at("storage").get<std::string>();
  if (storage == "dense") {
    const auto values =
        unpack<double>(node.at("data"), static_cast<std::size_t>(rows * cols), "dense matrix");
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Matrix(DenseMatrix(Eigen::Map<const RowMajor>(values.data(), rows, cols)));
  }
  if (storage != "csr") throw ParseError("unknown matrix storage '" + storage + "'");
  const auto nnz = node.at("nnz").get<std::size_t>();
  const auto indptr = unpack<std::int64_t>(node.at("indptr"), static_cast<std::size_t>(rows) + 1, "indptr");
  const auto indices = unpack<std::int64_t>(node.at("indices"), nnz, "indices");
  const auto values = unpack<double>(node.at("values"), nnz, "values");
  if (indptr.front() != 0 || indptr.back() != static_cast<std::int64_t>(nnz))
    throw ParseError("csr indptr is inconsistent with nnz");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(nnz);
  for (Index i = 0; i < rows; ++i) {
    if (indptr[i + 1] < indptr[i]) throw ParseError("csr indptr is not monotone");
    for (auto k = indptr[i]; k < indptr[i + 1]; ++k) {
      if (indices[k] < 0 || indices[k] >= cols) throw ParseError("csr column index out of range");
      triplets.emplace_back(i, static_cast<Index>(indices[k]), values[k]);
    }
  }
  SparseMatrix s(rows, cols);
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.makeCompressed();
  return Matrix(std::move(s));
}

std::string channel_name(const ChannelModel& c) {
  return c.kind == ChannelModel::Kind::Iid ? "iid" : "correlated";
}

std::string source_name(QuboSource::Kind k) {
  switch (k) {
    case QuboSource::Kind::Beasley: return "beasley";
    case QuboSource::Kind::Synthetic: return "synthetic";
    case QuboSource::Kind::File: return "file";
  }
  return "file";
}

QuboSource::Kind source_kind(const std::string& s) {
  if (s == "beasley") return QuboSource::Kind::Beasley;
  if (s == "synthetic") return QuboSource::Kind::Synthetic;
  if (s == "file") return QuboSource::Kind::File;
  throw ParseError("unknown QUBO source '" + s + "'");
}

json to_json(const QuboInstance& inst) {
  const auto& src = inst.source;
  json params{{"source", source_name(src.kind)}, {"name", src.name}, {"n", inst.q.rows()}};
  if (src.kind == QuboSource::Kind::Synthetic) {
    params["density"] = src.density;
    params["value_lo"] = src.value_lo;
    params["value_hi"] = src.value_hi;
    params["nonneg_fraction"] = src.nonneg_fraction;
    params["case"] = src.case_id;
    params["seed"] = src.seed;
  }
  params["best_known"] = inst.best_known ? json(*inst.best_known) : json(nullptr);
  return {{"type", "qubo"}, {"params", params}, {"matrices", {{"Q", matrix_to_json(inst.q)}}},
          {"vectors", json::object()}};
}

json to_json(const RecoveryInstance& inst) {
  return {{"type", "recovery"},
          {"params",
           {{"m", inst.a.rows()}, {"n", inst.a.cols()}, {"s", inst.s}, {"q", inst.q},
            {"nf", inst.nf}, {"seed", inst.seed}}},
          {"matrices", {{"A", matrix_to_json(inst.a)}}},
          {"vectors", {{"b", vector_to_json(inst.b)}, {"x_star", vector_to_json(inst.x_star)}}}};
}

json to_json(const MimoInstance& inst) {
  return {{"type", "mimo"},
          {"params",
           {{"m", inst.m}, {"n", inst.n}, {"snr_db", inst.snr_db}, {"rho", inst.rho},
            {"channel", channel_name(inst.channel)}, {"r", inst.channel.r}, {"seed", inst.seed}}},
          {"matrices", {{"A", matrix_to_json(inst.a)}}},
          {"vectors", {{"b", vector_to_json(inst.b)}, {"x_star", vector_to_json(inst.x_star)}}}};
}

json to_json(const OneBitInstance& inst) {
  return {{"type", "onebit"},
          {"params",
           {{"m", inst.h.rows()}, {"n", inst.h.cols()}, {"snr_db", inst.snr_db},
            {"rho", inst.rho}, {"seed", inst.seed}}},
          {"matrices", {{"H", matrix_to_json(inst.h)}}},
          {"vectors", {{"y", vector_to_json(inst.y)}, {"z_star", vector_to_json(inst.z_star)}}}};
}

AnyInstance from_json(const json& doc) {
  if (doc.value("format", std::string{}) != "binopt-instance")
    throw ParseError("not a binopt instance document");
  if (doc.value("version", 0) != kVersion)
    throw ParseError(fmt::format("unsupported instance version {}", doc.value("version", 0)));
  const std::string type = doc.at("type").get<std::string>();
  const json& p = doc.at("params");
  const json& mats = doc.at("matrices");
  const json& vecs = doc.at("vectors");

  if (type == "qubo") {
    QuboInstance inst;
    inst.q = matrix_from_json(mats.at("Q"));
    inst.source.kind = source_kind(p.at("source").get<std::string>());
    inst.source.name = p.value("name", std::string{});
    if (inst.source.kind == QuboSource::Kind::Synthetic) {
      inst.source.density = p.at("density").get<double>();
      inst.source.value_lo = p.at("value_lo").get<double>();
      inst.source.value_hi = p.at("value_hi").get<double>();
      inst.source.nonneg_fraction = p.at("nonneg_fraction").get<double>();
      inst.source.case_id = p.at("case").get<int>();
      inst.source.seed = p.at("seed").get<std::uint64_t>();
    }
    if (p.contains("best_known") && !p.at("best_known").is_null())
      inst.best_known = p.at("best_known").get<double>();
    return inst;
  }
  if (type == "recovery") {
    RecoveryInstance inst;
    inst.a = matrix_from_json(mats.at("A"));
    inst.b = vector_from_json(vecs.at("b"));
    inst.x_star = vector_from_json(vecs.at("x_star"));
    inst.s = p.at("s").get<Index>();
    inst.q = p.at("q").get<double>();
    inst.nf = p.at("nf").get<double>();
    inst.seed = p.at("seed").get<std::uint64_t>();
    return inst;
  }
  if (type == "mimo") {
    MimoInstance inst;
    inst.a = matrix_from_json(mats.at("A"));
    inst.b = vector_from_json(vecs.at("b"));
    inst.x_star = vector_from_json(vecs.at("x_star"));
    inst.m = p.at("m").get<Index>();
    inst.n = p.at("n").get<Index>();
    inst.snr_db = p.at("snr_db").get<double>();
    inst.rho = p.at("rho").get<double>();
    const std::string channel = p.at("channel").get<std::string>();
    if (channel == "iid")
      inst.channel = ChannelModel::iid();
    else if (channel == "correlated")
      inst.channel = ChannelModel::correlated(p.at("r").get<double>());
    else
      throw ParseError("unknown channel '" + channel + "'");
    inst.seed = p.at("seed").get<std::uint64_t>();
    return inst;
  }
  if (type == "onebit") {
    OneBitInstance inst;
    inst.h = matrix_from_json(mats.at("H"));
    inst.y = vector_from_json(vecs.at("y"));
    inst.z_star = vector_from_json(vecs.at("z_star"));
    inst.rho = p.at("rho").get<double>();
    inst.snr_db = p.at("snr_db").get<double>();
    inst.seed = p.at("seed").get<std::uint64_t>();
    return inst;
  }
  throw ParseError("unknown instance type '" + type + "'");
}

bool binary_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

bool sign_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 1.0 || x == -1.0; });
}

}  // namespace

std::string base64_encode(const std::string& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::string base64_decode(const std::string& text) {
  using namespace boost::archive::iterators;
  using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
  if (text.size() % 4 != 0) throw ParseError("base64 payload length is not a multiple of 4");
  if (text.empty()) return {};
  const std::size_t pad = text.size() - text.find_last_not_of('=') - 1;
  if (pad > 2) throw ParseError("invalid base64 padding");
  std::string body = text;
  std::replace(body.end() - static_cast<std::ptrdiff_t>(pad), body.end(), '=', 'A');
  try {
    std::string out(It(body.begin()), It(body.end()));
    out.resize(out.size() - pad);
    return out;
  } catch (const std::exception&) {
    throw ParseError("invalid base64 payload");
  }
}

std::string instance_type_name(const AnyInstance& inst) {
  constexpr const char* kNames[] = {"qubo", "recovery", "mimo", "onebit"};
  return kNames[inst.index()];
}

std::string to_json_string(const AnyInstance& inst) {
  json doc = std::visit([](const auto& i) { return to_json(i); }, inst);
  doc["format"] = "binopt-instance";
  doc["version"] = kVersion;
  return doc.dump(1) + "\n";
}

AnyInstance from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
}

void write_instance(const std::filesystem::path& path, const AnyInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot write " + path.string());
  out << to_json_string(inst);
  if (!out) throw InstanceError("write failed for " + path.string());
}

AnyInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return from_json_string(text);
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }
  QuboInstance inst = parse_beasley(path);
  return inst;
}

std::vector<std::string> validate_instance(const AnyInstance& any) {
  std::vector<std::string> problems;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, QuboInstance>) {
          if (!inst.q.is_symmetric()) problems.emplace_back("Q is not symmetric");
        } else if constexpr (std::is_same_v<T, RecoveryInstance>) {
          if (inst.b.size() != inst.a.rows()) problems.emplace_back("b length != rows of A");
          if (inst.x_star.size() != inst.a.cols()) problems.emplace_back("x_star length != cols of A");
          if (!binary_vector(inst.x_star)) problems.emplace_back("x_star is not binary");
          else if (inst.x_star.sum() != static_cast<double>(inst.s))
            problems.emplace_back("x_star does not have exactly s ones");
          if (!(inst.q > 1.0)) problems.emplace_back("q must exceed 1");
        } else if constexpr (std::is_same_v<T, MimoInstance>) {
          const Index m = inst.m, n = inst.n;
          if (inst.a.rows() != 2 * m || inst.a.cols() != 2 * n) {
            problems.emplace_back("stacked A must be 2m x 2n");
            return;
          }
          if (inst.b.size() != 2 * m) problems.emplace_back("b length != 2m");
          if (inst.x_star.size() != 2 * n) problems.emplace_back("x_star length != 2n");
          if (!binary_vector(inst.x_star)) problems.emplace_back("x_star is not binary");
          const DenseMatrix a = inst.a.to_dense();
          if (a.topLeftCorner(m, n) != a.bottomRightCorner(m, n))
            problems.emplace_back("stacking identity violated: Re H blocks differ");
          if (a.topRightCorner(m, n) != -a.bottomLeftCorner(m, n))
            problems.emplace_back("stacking identity violated: Im H blocks differ");
        } else {
          if (inst.y.size() != inst.h.rows()) problems.emplace_back("y length != rows of H");
          if (inst.z_star.size() != inst.h.cols()) problems.emplace_back("z_star length != cols of H");
          if (!sign_vector(inst.y)) problems.emplace_back("y is not +-1");
          if (!sign_vector(inst.z_star)) problems.emplace_back("z_star is not +-1");
          if (!(inst.rho > 0.0)) problems.emplace_back("rho must be positive");
        }
      },
      any);
  return problems;
}

}  // namespace binopt

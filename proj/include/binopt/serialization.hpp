#pragma once

// Native instance files.
//
// One JSON document per instance:
//
//   {
//     "format": "binopt-instance", "version": 1,
//     "type": "qubo" | "recovery" | "mimo" | "onebit",
//     "params": { ... generator parameters, seed ... },
//     "matrices": { "<name>": <matrix> },
//     "vectors":  { "<name>": <vector> }
//   }
//
// <vector> = {"size": n, "encoding": "base64-f64le", "data": "..."}
// <matrix> = {"rows": r, "cols": c, "storage": "dense", "encoding": "base64-f64le",
//             "data": "..." (row-major)}
//          | {"rows": r, "cols": c, "storage": "csr", "indptr": <i64 base64>,
//             "indices": <i64 base64>, "values": <f64 base64>}
//
// Doubles are stored bit-exactly as little-endian IEEE-754, so a write/read
// round trip reproduces every value.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "binopt/instances.hpp"

namespace binopt {

using AnyInstance = std::variant<QuboInstance, RecoveryInstance, MimoInstance, OneBitInstance>;

std::string instance_type_name(const AnyInstance& inst);

std::string to_json_string(const AnyInstance& inst);
AnyInstance from_json_string(const std::string& text);

void write_instance(const std::filesystem::path& path, const AnyInstance& inst);

/// Reads a native JSON instance, or an ORLIB triplet file (anything that does
/// not start with '{') as a QUBO instance. Throws InstanceError / ParseError.
AnyInstance read_instance(const std::filesystem::path& path);

/// Structural checks: symmetry, binarity of ground truth, +-1 observations,
/// sizes, and the real-stacking block identity. Returns the list of problems.
std::vector<std::string> validate_instance(const AnyInstance& inst);

std::string base64_encode(const std::string& bytes);
std::string base64_decode(const std::string& text);

}  // namespace binopt

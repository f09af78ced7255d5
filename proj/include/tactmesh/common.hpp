#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tact {

// Process exit codes used by the CLI; library code throws these and the
// CLI maps what() + code() to stderr + exit status.
enum class ErrorCode : int {
  config = 2,    // config schema violation
  missing = 3,   // referenced artifact does not exist
  numerical = 4, // solver / training divergence
  contract = 5,  // dimension mismatch, frozen-weight violation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorCode::config, m) {}
};
struct MissingArtifactError : Error {
  explicit MissingArtifactError(const std::string& m)
      : Error(ErrorCode::missing, m) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& m)
      : Error(ErrorCode::numerical, m) {}
};
struct ContractError : Error {
  explicit ContractError(const std::string& m)
      : Error(ErrorCode::contract, m) {}
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

// FNV-1a, used for config/artifact fingerprints in run manifests.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(s.data(), s.size());
}

std::string hex64(std::uint64_t v);

// File helpers shared by the binary formats.
std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path,
                      const std::vector<std::uint8_t>& bytes);
std::uint64_t hash_file(const std::string& path);
bool file_exists(const std::string& path);

}  // namespace tact

#pragma once

// JSON state and channel files. Matrices are stored row-major.
//
//   {"schema_version": "1", "n_a": 1, "n_b": 1, "cm": [...], "mean": [...]}
//   {"schema_version": "1", "k": [...], "m_noise": [...], "d_bar": [...]}
//
// "mean" and "d_bar" are optional and default to zeros.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfg::io {

inline constexpr const char* kSchemaVersion = "1";

// Malformed input or unreadable/unwritable files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFile {
  int n_a = 0;
  int n_b = 0;
  std::vector<double> cm;
  std::vector<double> mean;

  std::size_t dim() const { return static_cast<std::size_t>(2 * (n_a + n_b)); }
};

struct ChannelFile {
  int modes = 1;
  std::vector<double> k;
  std::vector<double> m_noise;
  std::vector<double> d_bar;
};

StateFile parse_state(const std::string& text);
ChannelFile parse_channel(const std::string& text);

std::string format_state(const StateFile& state);
std::string format_channel(const ChannelFile& channel);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

inline StateFile read_state(const std::string& path) { return parse_state(read_file(path)); }
inline ChannelFile read_channel(const std::string& path) { return parse_channel(read_file(path)); }

/// Seventeen significant digits: enough to round-trip any double exactly.
std::string format_double(double v);

}  // namespace nfg::io

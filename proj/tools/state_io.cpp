#include "state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nfg::io {
namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

void check_schema(const json& doc) {
  const auto it = doc.find("schema_version");
  if (it == doc.end()) throw ParseError("missing \"schema_version\"");
  if (!it->is_string() || it->get<std::string>() != kSchemaVersion) {
    throw ParseError(std::string("unsupported schema_version (expected \"") + kSchemaVersion + "\")");
  }
}

int read_count(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing \"") + key + "\"");
  if (!it->is_number_integer() || it->get<long long>() < 0 || it->get<long long>() > 64) {
    throw ParseError(std::string("\"") + key + "\" must be an integer in [0, 64]");
  }
  return it->get<int>();
}

std::vector<double> read_numbers(const json& doc, const char* key, std::size_t expected, bool required) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) throw ParseError(std::string("missing \"") + key + "\"");
    return std::vector<double>(expected, 0.0);
  }
  if (!it->is_array()) throw ParseError(std::string("\"") + key + "\" must be an array of numbers");
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" contains a non-numeric entry");
    out.push_back(v.get<double>());
  }
  if (expected != 0 && out.size() != expected) {
    throw ParseError(std::string("\"") + key + "\" has " + std::to_string(out.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  return out;
}

void append_array(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  out += ']';
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

StateFile parse_state(const std::string& text) {
  const json doc = parse_document(text);
  check_schema(doc);
  StateFile s;
  s.n_a = read_count(doc, "n_a");
  s.n_b = read_count(doc, "n_b");
  if (s.n_a + s.n_b == 0) throw ParseError("state needs at least one mode");
  s.cm = read_numbers(doc, "cm", s.dim() * s.dim(), true);
  s.mean = read_numbers(doc, "mean", s.dim(), false);
  return s;
}

ChannelFile parse_channel(const std::string& text) {
  const json doc = parse_document(text);
  check_schema(doc);
  ChannelFile c;
  c.k = read_numbers(doc, "k", 0, true);
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(c.k.size()))));
  if (side == 0 || side * side != c.k.size() || side % 2 != 0) {
    throw ParseError("\"k\" must hold a 2m x 2m matrix");
  }
  c.modes = static_cast<int>(side / 2);
  c.m_noise = read_numbers(doc, "m_noise", c.k.size(), true);
  c.d_bar = read_numbers(doc, "d_bar", side, false);
  return c;
}

std::string format_state(const StateFile& state) {
  std::string out = "{\n  \"schema_version\": \"";
  out += kSchemaVersion;
  out += "\",\n  \"n_a\": " + std::to_string(state.n_a) + ",\n  \"n_b\": " + std::to_string(state.n_b) +
         ",\n  \"cm\": ";
  append_array(out, state.cm);
  out += ",\n  \"mean\": ";
  append_array(out, state.mean);
  out += "\n}\n";
  return out;
}

std::string format_channel(const ChannelFile& channel) {
  std::string out = "{\n  \"schema_version\": \"";
  out += kSchemaVersion;
  out += "\",\n  \"k\": ";
  append_array(out, channel.k);
  out += ",\n  \"m_noise\": ";
  append_array(out, channel.m_noise);
  out += ",\n  \"d_bar\": ";
  append_array(out, channel.d_bar);
  out += "\n}\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ParseError("error reading " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path);
  out << contents;
  out.flush();
  if (!out) throw ParseError("error writing " + path);
}

}  // namespace nfg::io

#include "dispersia/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <openssl/evp.h>

namespace dispersia {

namespace pt = boost::property_tree;

namespace {

std::string trimmed(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("key '" + key + "': expected a number, got '" + s + "'");
  }
  return value;
}

long parse_long(const std::string& key, const std::string& raw) {
  const std::string s = trimmed(raw);
  long value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + s + "'");
  }
  return value;
}

}  // namespace

ExperimentConfig::ExperimentConfig(pt::ptree tree) : tree_(std::move(tree)) {}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [name, node] : tree) {
    if (node.empty()) throw ConfigError("key '" + name + "' is outside any section");
  }
  ExperimentConfig config(std::move(tree));
  if (!config.has("experiment.name")) throw ConfigError("missing key 'experiment.name'");
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string ExperimentConfig::experiment() const { return text("experiment.name"); }

bool ExperimentConfig::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::string ExperimentConfig::text(const std::string& key) const {
  const auto value = tree_.get_optional<std::string>(key);
  if (!value) throw ConfigError("missing key '" + key + "'");
  return trimmed(*value);
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double ExperimentConfig::number(const std::string& key) const { return parse_double(key, text(key)); }

double ExperimentConfig::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long ExperimentConfig::integer(const std::string& key) const { return parse_long(key, text(key)); }

long ExperimentConfig::integer(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool ExperimentConfig::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = text(key);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + s + "'");
}

Rational ExperimentConfig::rational(const std::string& key) const {
  try {
    return parse_rational(text(key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

Rational ExperimentConfig::rational(const std::string& key, const Rational& fallback) const {
  return has(key) ? rational(key) : fallback;
}

Exponent ExperimentConfig::exponent(const std::string& key) const {
  try {
    return parse_exponent(text(key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

Exponent ExperimentConfig::exponent(const std::string& key, const Exponent& fallback) const {
  return has(key) ? exponent(key) : fallback;
}

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(text(key));
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key.find('.') == std::string::npos) throw ConfigError("key '" + key + "' needs a section");
  tree_.put(key, value);
}

std::string ExperimentConfig::canonical_text() const {
  std::map<std::string, std::map<std::string, std::string>> sorted;
  for (const auto& [section, node] : tree_) {
    for (const auto& [key, leaf] : node) sorted[section][key] = trimmed(leaf.data());
  }
  std::string out;
  for (const auto& [section, keys] : sorted) {
    for (const auto& [key, value] : keys) out += section + "." + key + "=" + value + "\n";
  }
  return out;
}

std::string ExperimentConfig::fingerprint() const { return sha256_hex(canonical_text()); }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

}  // namespace dispersia

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "dispersia/exponent.hpp"

namespace dispersia {

/// Malformed config text, a missing key or a value of the wrong type.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sectioned key = value configuration.
///
/// Keys are addressed as "section.key". Lines starting with ';' or '#' are comments.
/// The fingerprint is the SHA-256 of the canonical text: sections and keys sorted,
/// values trimmed, one "section.key=value" line each.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Value of "experiment.name".
  std::string experiment() const;

  bool has(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  Rational rational(const std::string& key) const;
  Rational rational(const std::string& key, const Rational& fallback) const;
  Exponent exponent(const std::string& key) const;
  Exponent exponent(const std::string& key, const Exponent& fallback) const;
  /// Comma-separated numbers.
  std::vector<double> numbers(const std::string& key) const;

  /// Overrides or adds one value; the fingerprint follows.
  void set(const std::string& key, const std::string& value);

  std::string canonical_text() const;
  std::string fingerprint() const;

 private:
  explicit ExperimentConfig(boost::property_tree::ptree tree);

  boost::property_tree::ptree tree_;
};

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

}  // namespace dispersia

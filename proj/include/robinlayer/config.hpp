#ifndef ROBINLAYER_CONFIG_HPP
#define ROBINLAYER_CONFIG_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "robinlayer/geometry.hpp"

namespace robinlayer::config {

using Value = std::variant<double, std::string, bool, std::vector<double>>;
using Table = std::map<std::string, Value>;

/// Flat TOML subset: `key = value` lines, `#` comments, strings, numbers,
/// booleans and numeric arrays. Section headers are rejected.
Table parse_toml(const std::string& text);
Table load_toml_file(const std::string& path);

double get_number(const Table& t, const std::string& key, double fallback);
std::string get_string(const Table& t, const std::string& key,
                       const std::string& fallback);
bool get_bool(const Table& t, const std::string& key, bool fallback);
std::vector<double> get_array(const Table& t, const std::string& key);
bool has(const Table& t, const std::string& key);

/// Curve description from a config table: `kind = "ellipse", a = 2.0, ...`.
/// For `kind = "sampled"`, `csv` names a file with an `x,y` header.
geometry::CurveSpec curve_spec_from_table(const Table& t);

std::vector<geometry::Point> read_xy_csv(const std::string& path);

}  // namespace robinlayer::config

#endif

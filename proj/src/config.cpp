#include "robinlayer/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace robinlayer::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Value parse_value(const std::string& raw, int line_no) {
    const std::string v = trim(raw);
    if (v.empty())
        throw std::invalid_argument("toml: empty value at line " +
                                    std::to_string(line_no));
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw std::invalid_argument("toml: unterminated string at line " +
                                        std::to_string(line_no));
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '[') {
        if (v.back() != ']')
            throw std::invalid_argument("toml: unterminated array at line " +
                                        std::to_string(line_no));
        std::vector<double> arr;
        std::string body = v.substr(1, v.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            arr.push_back(std::stod(item));
        }
        return arr;
    }
    std::size_t pos = 0;
    const double num = std::stod(v, &pos);
    if (pos != v.size())
        throw std::invalid_argument("toml: bad number at line " +
                                    std::to_string(line_no));
    return num;
}

}  // namespace

Table parse_toml(const std::string& text) {
    Table table;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        // strip comments outside strings
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[')
            throw std::invalid_argument(
                "toml: section headers are not supported (line " +
                std::to_string(line_no) + ")");
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("toml: expected key = value at line " +
                                        std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("toml: empty key at line " +
                                        std::to_string(line_no));
        table[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return table;
}

Table load_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str());
}

bool has(const Table& t, const std::string& key) { return t.count(key) > 0; }

double get_number(const Table& t, const std::string& key, double fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (const double* d = std::get_if<double>(&it->second)) return *d;
    throw std::invalid_argument("config: " + key + " must be a number");
}

std::string get_string(const Table& t, const std::string& key,
                       const std::string& fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
    throw std::invalid_argument("config: " + key + " must be a string");
}

bool get_bool(const Table& t, const std::string& key, bool fallback) {
    auto it = t.find(key);
    if (it == t.end()) return fallback;
    if (const bool* b = std::get_if<bool>(&it->second)) return *b;
    throw std::invalid_argument("config: " + key + " must be a boolean");
}

std::vector<double> get_array(const Table& t, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end()) return {};
    if (const auto* a = std::get_if<std::vector<double>>(&it->second)) return *a;
    if (const double* d = std::get_if<double>(&it->second)) return {*d};
    throw std::invalid_argument("config: " + key + " must be an array");
}

geometry::CurveSpec curve_spec_from_table(const Table& t) {
    geometry::CurveSpec spec;
    const std::string kind = get_string(t, "kind", "");
    using Kind = geometry::CurveSpec::Kind;
    if (kind == "circle")
        spec.kind = Kind::circle;
    else if (kind == "ellipse")
        spec.kind = Kind::ellipse;
    else if (kind == "perturbed_circle")
        spec.kind = Kind::perturbed_circle;
    else if (kind == "flat_well")
        spec.kind = Kind::flat_well;
    else if (kind == "stadium")
        spec.kind = Kind::stadium;
    else if (kind == "sampled")
        spec.kind = Kind::sampled;
    else
        throw std::invalid_argument("config: unknown curve kind '" + kind + "'");

    spec.R = get_number(t, "R", spec.R);
    spec.a = get_number(t, "a", spec.a);
    spec.b = get_number(t, "b", spec.b);
    spec.eps = get_number(t, "eps", spec.eps);
    spec.mode = int(get_number(t, "mode", spec.mode));
    spec.p = int(get_number(t, "p", spec.p));
    spec.Cp = get_number(t, "Cp", spec.Cp);
    spec.plateau = get_number(t, "plateau", spec.plateau);
    spec.cell_length = get_number(t, "cell_length", spec.cell_length);
    spec.ell = get_number(t, "ell", spec.ell);
    spec.closed = get_bool(t, "closed", spec.closed);
    if (spec.kind == Kind::sampled) {
        const std::string csv = get_string(t, "csv", "");
        if (csv.empty())
            throw std::invalid_argument("config: sampled curve needs csv = \"...\"");
        spec.points = read_xy_csv(csv);
    }
    spec.validate();
    return spec;
}

std::vector<geometry::Point> read_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("CSV file " + path + " is empty");
    if (trim(line) != "x,y")
        throw std::runtime_error("CSV file " + path + " must start with 'x,y'");
    std::vector<geometry::Point> pts;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("CSV " + path + ": bad row at line " +
                                     std::to_string(line_no));
        pts.push_back({std::stod(line.substr(0, comma)),
                       std::stod(line.substr(comma + 1))});
    }
    return pts;
}

}  // namespace robinlayer::config

// Copyright 2026 The msfactory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSFACTORY_REPORT_HPP
#define MSFACTORY_REPORT_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "msfactory/factory.hpp"

namespace msf {

// ---- rounding / formatting ---------------------------------------------------------------

inline double round_sig(double x, int digits) {
    if (x == 0 || !std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

/// Full round-trip representation.
inline std::string fmt_exact(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// "4.4e-08" style.
inline std::string fmt_sci(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return buf;
}

/// 3 significant digits with thousands separators: 18630 -> "18,600", 18.06 -> "18.1".
inline std::string fmt_cost(double x, int digits = 3) {
    double r = round_sig(x, digits);
    if (std::fabs(r) < std::pow(10.0, digits)) {
        int mag = r == 0 ? 0 : static_cast<int>(std::floor(std::log10(std::fabs(r))));
        int decimals = std::max(0, digits - 1 - mag);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
        return buf;
    }
    auto s = std::to_string(std::llround(r));
    std::string out;
    int cnt = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (cnt && cnt % 3 == 0 && *it != '-') out.push_back(',');
        out.push_back(*it);
        cnt++;
    }
    return {out.rbegin(), out.rend()};
}

// ---- config files ------------------------------------------------------------------------

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::pair<size_t, size_t> line_col(const std::string &text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return {line, col};
}

inline void check_keys(const nlohmann::json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) ok |= it.key() == a;
        if (!ok) throw ConfigError(where + "." + it.key() + ": unknown key");
    }
}

inline double get_prob(const nlohmann::json &v, const std::string &where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

inline std::array<int, 3> get_triple(const nlohmann::json &v, const std::string &where) {
    if (!v.is_array() || v.size() != 3) throw ConfigError(where + ": expected [dX, dZ, dm]");
    std::array<int, 3> r{};
    for (size_t i = 0; i < 3; i++) {
        if (!v[i].is_number_integer()) throw ConfigError(where + "[" + std::to_string(i) + "]: expected an integer");
        r[i] = v[i].get<int>();
        if (r[i] < 1 || r[i] % 2 == 0) {
            throw ConfigError(where + "[" + std::to_string(i) + "]: distance must be a positive odd integer, got " +
                              std::to_string(r[i]));
        }
    }
    return r;
}

inline ConsumptionPrefactor get_prefactor(const nlohmann::json &v, const std::string &where) {
    if (v == "half") return ConsumptionPrefactor::half;
    if (v == "full") return ConsumptionPrefactor::full;
    throw ConfigError(where + ": expected \"half\" or \"full\"");
}

}  // namespace detail

/// Schema:
/// {
///   "defaults": {"p_phys": 1e-4, "c_t": 1, "consumption_prefactor": "half"},   (optional)
///   "protocols": [
///     {"family": "l2_15x15", "d": [9,3,3], "d2": [25,9,9], "n_l1": 4,
///      "p_phys": 1e-4, "c_t": 10, "consumption_prefactor": "full", "label": "..."}
///   ]
/// }
inline std::vector<FactoryConfig> parse_config(const std::string &text, const std::string &source = "<config>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " + e.what());
    }
    if (!j.is_object()) throw ConfigError(source + ": top level must be an object");
    detail::check_keys(j, source, {"defaults", "protocols"});
    PhysicalNoise def_noise{1e-4, 1};
    auto def_cp = ConsumptionPrefactor::half;
    if (j.contains("defaults")) {
        const auto &d = j["defaults"];
        std::string w = source + ".defaults";
        if (!d.is_object()) throw ConfigError(w + ": expected an object");
        detail::check_keys(d, w, {"p_phys", "c_t", "consumption_prefactor"});
        if (d.contains("p_phys")) def_noise.p_phys = detail::get_prob(d["p_phys"], w + ".p_phys");
        if (d.contains("c_t")) def_noise.c_T = detail::get_prob(d["c_t"], w + ".c_t");
        if (d.contains("consumption_prefactor")) def_cp = detail::get_prefactor(d["consumption_prefactor"], w + ".consumption_prefactor");
    }
    if (!j.contains("protocols") || !j["protocols"].is_array()) {
        throw ConfigError(source + ".protocols: required array missing");
    }
    std::vector<FactoryConfig> out;
    for (size_t i = 0; i < j["protocols"].size(); i++) {
        const auto &p = j["protocols"][i];
        std::string w = source + ".protocols[" + std::to_string(i) + "]";
        if (!p.is_object()) throw ConfigError(w + ": expected an object");
        detail::check_keys(p, w, {"family", "d", "d2", "n_l1", "p_phys", "c_t", "consumption_prefactor", "label"});
        FactoryConfig c;
        c.noise = def_noise;
        c.consumption = def_cp;
        if (!p.contains("family") || !p["family"].is_string()) throw ConfigError(w + ".family: required string");
        try {
            c.family = parse_family(p["family"].get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw ConfigError(w + ".family: " + e.what());
        }
        if (!p.contains("d")) throw ConfigError(w + ".d: required");
        auto d = detail::get_triple(p["d"], w + ".d");
        c.distances.dX = d[0];
        c.distances.dZ = d[1];
        c.distances.dm = d[2];
        if (p.contains("d2")) {
            auto d2 = detail::get_triple(p["d2"], w + ".d2");
            c.distances.dX2 = d2[0];
            c.distances.dZ2 = d2[1];
            c.distances.dm2 = d2[2];
        }
        if (p.contains("n_l1")) {
            if (!p["n_l1"].is_number_integer()) throw ConfigError(w + ".n_l1: expected an integer");
            c.distances.nL1 = p["n_l1"].get<int>();
        }
        if (p.contains("p_phys")) c.noise.p_phys = detail::get_prob(p["p_phys"], w + ".p_phys");
        if (p.contains("c_t")) c.noise.c_T = detail::get_prob(p["c_t"], w + ".c_t");
        if (p.contains("consumption_prefactor")) c.consumption = detail::get_prefactor(p["consumption_prefactor"], w + ".consumption_prefactor");
        if (p.contains("label")) {
            if (!p["label"].is_string()) throw ConfigError(w + ".label: expected a string");
            c.label = p["label"].get<std::string>();
        }
        try {
            c.validate();
        } catch (const std::exception &e) {
            throw ConfigError(w + ": " + e.what());
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<FactoryConfig> load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

// ---- emit --------------------------------------------------------------------------------

enum class Format { plain, csv, json };

inline Format parse_format(const std::string &s) {
    if (s == "plain") return Format::plain;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format: " + s);
}

inline const char *kCsvHeader =
    "protocol,p_phys,p_out,qubits,cycles,qubitcycles_per_state,d_full_100,cost_d3_100,d_full_10k,cost_d3_10k";

inline std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c;
    }
    return r + "\"";
}

inline nlohmann::json to_json(const FactoryReport &r) {
    nlohmann::json j;
    auto opt = [](const auto &o) -> nlohmann::json { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
    j["protocol"] = r.protocol;
    j["family"] = family_name(r.family);
    const auto &d = r.distances;
    j["distances"] = {{"dX", d.dX}, {"dZ", d.dZ}, {"dm", d.dm}, {"dX2", opt(d.dX2)},
                      {"dZ2", opt(d.dZ2)}, {"dm2", opt(d.dm2)}, {"nL1", opt(d.nL1)}};
    j["p_phys"] = r.p_phys;
    j["c_T"] = r.c_T;
    j["outputs"] = r.outputs;
    j["p_out"] = r.p_out;
    j["p_L1"] = r.p_L1;
    j["p_fail_L1"] = r.p_fail_L1;
    j["p_fail_L2"] = r.p_fail_L2;
    j["qubits"] = r.qubits;
    j["cycles"] = r.cycles;
    j["qubitcycles_per_state"] = r.qubitcycles_per_state;
    j["d_full_100"] = opt(r.d_full_100);
    j["cost_d3_100"] = opt(r.cost_d3_100);
    j["d_full_10k"] = opt(r.d_full_10k);
    j["cost_d3_10k"] = opt(r.cost_d3_10k);
    return j;
}

inline std::string full_distance_cell(const std::optional<double> &cost, const std::optional<int> &d) {
    if (!cost || !d) return "-";
    return fmt_cost(*cost) + "d^3 / d=" + std::to_string(*d);
}

inline std::string emit(const std::vector<FactoryReport> &reports, Format f) {
    std::ostringstream out;
    switch (f) {
        case Format::csv: {
            out << kCsvHeader << "\n";
            auto oi = [](const std::optional<int> &o) { return o ? std::to_string(*o) : std::string(); };
            auto od = [](const std::optional<double> &o) { return o ? fmt_exact(*o) : std::string(); };
            for (const auto &r : reports) {
                out << csv_quote(r.protocol) << ',' << fmt_exact(r.p_phys) << ',' << fmt_exact(r.p_out) << ','
                    << r.qubits << ',' << fmt_exact(r.cycles) << ',' << fmt_exact(r.qubitcycles_per_state) << ','
                    << oi(r.d_full_100) << ',' << od(r.cost_d3_100) << ',' << oi(r.d_full_10k) << ','
                    << od(r.cost_d3_10k) << "\n";
            }
            break;
        }
        case Format::json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto &r : reports) arr.push_back(to_json(r));
            out << arr.dump(2) << "\n";
            break;
        }
        case Format::plain: {
            out << std::left << std::setw(46) << "Protocol" << std::setw(8) << "p_phys" << std::setw(10) << "p_out"
                << std::right << std::setw(9) << "Qubits" << std::setw(8) << "Cycles" << std::setw(12) << "Qubitcycles"
                << "  Full distance\n";
            for (const auto &r : reports) {
                out << std::left << std::setw(46) << r.protocol << std::setw(8) << fmt_sci(r.p_phys, 1) << std::setw(10)
                    << fmt_sci(r.p_out, 2) << std::right << std::setw(9) << fmt_cost(double(r.qubits)) << std::setw(8)
                    << fmt_cost(r.cycles) << std::setw(12) << fmt_cost(r.qubitcycles_per_state) << "  "
                    << full_distance_cell(r.cost_d3_100, r.d_full_100) << " | "
                    << full_distance_cell(r.cost_d3_10k, r.d_full_10k) << "\n";
            }
            break;
        }
    }
    return out.str();
}

// ---- CSV parse (round trips the emitted columns) -----------------------------------------

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); i++) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                i++;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quote");
    cells.push_back(cur);
    return cells;
}

/// Reads the emitted CSV back. Only the CSV columns are populated.
inline std::vector<FactoryReport> parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: missing or wrong header");
    std::vector<FactoryReport> out;
    int row = 1;
    while (std::getline(in, line)) {
        row++;
        if (line.empty()) continue;
        auto c = split_csv_line(line);
        if (c.size() != 10) throw std::invalid_argument("csv row " + std::to_string(row) + ": expected 10 fields");
        FactoryReport r;
        r.protocol = c[0];
        r.p_phys = std::stod(c[1]);
        r.p_out = std::stod(c[2]);
        r.qubits = std::stoll(c[3]);
        r.cycles = std::stod(c[4]);
        r.qubitcycles_per_state = std::stod(c[5]);
        if (!c[6].empty()) r.d_full_100 = std::stoi(c[6]);
        if (!c[7].empty()) r.cost_d3_100 = std::stod(c[7]);
        if (!c[8].empty()) r.d_full_10k = std::stoi(c[8]);
        if (!c[9].empty()) r.cost_d3_10k = std::stod(c[9]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace msf

#endif

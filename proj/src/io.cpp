/*
 Copyright 2026 The cyclid Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "cyclid/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cyclid/errors.hpp"

namespace cyclid::io {
namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
    }
    return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path, long line) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw io_error(path.string() + ":" + std::to_string(line) + ": cannot parse '" + text +
                       "' as a number");
    }
    return value;
}

int get_dim(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw io_error(std::string("model: missing integer field '") + key + "'");
    }
    const int value = j.at(key).get<int>();
    if (value < 1) throw io_error(std::string("model: field '") + key + "' must be positive");
    return value;
}

std::vector<Matrix> matrix_list(const Json& j, const char* key, int count, int rows, int cols) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw io_error(std::string("model: missing matrix list '") + key + "'");
    }
    const Json& list = j.at(key);
    if (list.size() != static_cast<std::size_t>(count)) {
        throw io_error(std::string("model: '") + key + "' has " + std::to_string(list.size()) +
                       " entries, expected " + std::to_string(count));
    }
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < list.size(); ++k) {
        out.push_back(matrix_from_json(list[k], rows, cols, std::string(key) + "_" + std::to_string(k)));
    }
    return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(rows)) {
        throw io_error("model: " + what + " must be an array of " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
            throw io_error("model: " + what + " row " + std::to_string(i) + " must have " +
                           std::to_string(cols) + " entries");
        }
        for (int c = 0; c < cols; ++c) {
            const Json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw io_error("model: " + what + " has a non-numeric entry");
            m(i, c) = v.get<double>();
        }
    }
    return m;
}

Json to_json(const LptvModel& model) {
    Json j;
    j["M"] = model.period();
    j["n"] = model.state_dim();
    j["m"] = model.input_dim();
    j["l"] = model.output_dim();
    auto list = [](const std::vector<Matrix>& ms) {
        Json out = Json::array();
        for (const Matrix& m : ms) out.push_back(matrix_to_json(m));
        return out;
    };
    j["A"] = list(model.a_list());
    j["B"] = list(model.b_list());
    j["C"] = list(model.c_list());
    j["D"] = list(model.d_list());
    return j;
}

Json to_json(const CycledModel& model) {
    Json j;
    j["M"] = model.period;
    j["n"] = model.state_dim;
    j["m"] = model.input_dim;
    j["l"] = model.output_dim;
    j["A_check"] = matrix_to_json(model.a);
    j["B_check"] = matrix_to_json(model.b);
    j["C_check"] = matrix_to_json(model.c);
    j["D_check"] = matrix_to_json(model.d);
    return j;
}

LptvModel lptv_from_json(const Json& j) {
    const int period = get_dim(j, "M");
    const int n = get_dim(j, "n");
    const int m = get_dim(j, "m");
    const int l = get_dim(j, "l");
    try {
        return {matrix_list(j, "A", period, n, n), matrix_list(j, "B", period, n, m),
                matrix_list(j, "C", period, l, n), matrix_list(j, "D", period, l, m)};
    } catch (const Json::exception& e) {
        throw io_error(std::string("model: ") + e.what());
    }
}

CycledModel cycled_from_json(const Json& j) {
    const int period = get_dim(j, "M");
    const int n = get_dim(j, "n");
    const int m = get_dim(j, "m");
    const int l = get_dim(j, "l");
    auto get = [&](const char* key, int rows, int cols) {
        if (!j.contains(key)) throw io_error(std::string("model: missing '") + key + "'");
        return matrix_from_json(j.at(key), rows, cols, key);
    };
    return {period, n, m, l, get("A_check", period * n, period * n), get("B_check", period * n, period * m),
            get("C_check", period * l, period * n), get("D_check", period * l, period * m)};
}

AnyModel model_from_json(const Json& j) {
    if (!j.is_object()) throw io_error("model: document must be a JSON object");
    if (j.contains("A_check")) return cycled_from_json(j);
    return lptv_from_json(j);
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("failed writing '" + path.string() + "'");
}

AnyModel read_model(const std::filesystem::path& path) { return model_from_json(read_json(path)); }

void write_model(const std::filesystem::path& path, const LptvModel& model) {
    write_json(path, to_json(model));
}

SignalSequence read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw io_error(path.string() + ": missing header row");
    const auto header = split(line);
    if (header.size() < 2 || header.front() != "t") {
        throw io_error(path.string() + ": header must start with 't' followed by signal columns");
    }
    const auto dim = static_cast<Eigen::Index>(header.size() - 1);
    std::vector<double> data;
    long first_time = 0;
    long rows = 0;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw io_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(header.size()) + " columns, found " +
                           std::to_string(fields.size()));
        }
        const double t = parse_double(fields[0], path, line_no);
        if (rows == 0) first_time = static_cast<long>(t);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const double value = parse_double(fields[c], path, line_no);
            if (!std::isfinite(value)) {
                throw io_error(path.string() + ":" + std::to_string(line_no) + ": non-finite value");
            }
            data.push_back(value);
        }
        ++rows;
    }
    SignalSequence signal;
    signal.values = Eigen::Map<const Matrix>(data.data(), dim, rows);
    signal.start_time = first_time;
    return signal;
}

void write_signal_csv(const std::filesystem::path& path, const SignalSequence& signal,
                      const std::string& prefix) {
    std::ofstream out = open_output(path);
    out << 't';
    for (int i = 0; i < signal.dim(); ++i) out << ',' << prefix << '_' << i + 1;
    out << '\n';
    for (long k = 0; k < signal.length(); ++k) {
        out << signal.start_time + k;
        for (int i = 0; i < signal.dim(); ++i) out << ',' << signal.values(i, k);
        out << '\n';
    }
    if (!out) throw io_error("failed writing '" + path.string() + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    return std::filesystem::path(csv.string() + ".meta.json");
}

void write_cycled_csv(const std::filesystem::path& path, const CycledSignal& signal,
                      const std::string& prefix) {
    write_signal_csv(path, SignalSequence{signal.values, signal.start_time}, prefix);
    write_json(sidecar_path(path), Json{{"M", signal.period}, {"block_dim", signal.block_dim}});
}

CycledSignal read_cycled_csv(const std::filesystem::path& path) {
    const Json meta = read_json(sidecar_path(path));
    const int period = get_dim(meta, "M");
    const int block_dim = get_dim(meta, "block_dim");
    SignalSequence raw = read_signal_csv(path);
    if (raw.dim() != period * block_dim) {
        throw io_error(path.string() + ": has " + std::to_string(raw.dim()) +
                       " columns but the sidecar declares M * block_dim = " +
                       std::to_string(period * block_dim));
    }
    return {block_dim, period, std::move(raw.values), raw.start_time};
}

Json to_json(const ValidationReport& report) {
    return Json{{"observable", report.observable},
                {"controllable", report.controllable},
                {"observability_rank", report.observability_rank},
                {"controllability_rank", report.controllability_rank}};
}

Json to_json(const StructureReport& report) {
    Json cells = Json::array();
    for (const StructureCell& cell : report.cells) {
        cells.push_back(Json{{"check", std::string(to_string(cell.check))},
                             {"i", cell.i},
                             {"j", cell.j},
                             {"residual", cell.residual}});
    }
    return Json{{"pass", report.pass},
                {"tolerance", report.tolerance},
                {"worst",
                 Json{{"check", std::string(to_string(report.worst.check))},
                      {"i", report.worst.i},
                      {"j", report.worst.j},
                      {"residual", report.worst.residual}}},
                {"cells", std::move(cells)}};
}

Json to_json(const IdentifyDiagnostics& d) {
    std::vector<double> sigma(d.lti.singular_values.data(),
                              d.lti.singular_values.data() + d.lti.singular_values.size());
    auto finite_or_null = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    return Json{
        {"stages", Json::array({"cycle", "subspace", "assumption", "transform", "projection", "extract"})},
        {"subspace",
         Json{{"order", d.lti.order()},
              {"singular_values", sigma},
              {"gap_ratio", finite_or_null(d.lti.gap_ratio)},
              {"spectral_radius", d.lti.spectral_radius},
              {"ill_conditioned", d.lti.ill_conditioned},
              {"warnings", d.lti.warnings}}},
        {"assumption", to_json(d.assumption)},
        {"transform",
         Json{{"condition_number", finite_or_null(d.transform.condition_number)},
              {"selector", matrix_to_json(d.selector.f)}}},
        {"structure_residuals",
         Json{{"A", d.residual_a}, {"B", d.residual_b}, {"C", d.residual_c}, {"D", d.residual_d}}},
        {"markov_deviation", d.markov_deviation}};
}

}  // namespace cyclid::io

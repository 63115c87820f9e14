#include "hankel/output.hpp"

#include "hankel/matrix_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace hankel {

namespace {

using Json = nlohmann::ordered_json;

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

/// Two-space indented rendering with every float at 17 significant digits.
void render(const Json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    if (j.is_object() || j.is_array()) {
        if (j.empty()) {
            out += j.is_object() ? "{}" : "[]";
            return;
        }
        out += j.is_object() ? "{\n" : "[\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out += pad;
            if (j.is_object()) out += Json(it.key()).dump() + ": ";
            render(*it, indent + 2, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + (j.is_object() ? "}" : "]");
    } else if (j.is_number_float()) {
        out += json_number(j.get<double>());
    } else {
        out += j.dump();
    }
}

std::string render(const Json& j) {
    std::string out;
    render(j, 0, out);
    return out + "\n";
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void add_fit(Json& o, const Series& s) {
    if (!s.fit) {
        o["fit"] = nullptr;
        o["r2"] = nullptr;
        return;
    }
    Json f = Json::object();
    f["A"] = number(s.fit->a);
    f["B"] = number(s.fit->b);
    if (s.fit->has_c) f["C"] = number(s.fit->c);
    if (s.fit->has_d) f["D"] = number(s.fit->d);
    o["fit"] = f;
    o["r2"] = number(s.fit->r2);
    o["A_standard_error"] = number(s.fit->a_standard_error);
}

void add_prediction(Json& o, const Series& s) {
    o["predicted_A"] = number(s.predicted_a);
    o["relative_error"] = s.fit ? number(s.relative_error) : Json(nullptr);
    if (s.predicted_d) o["predicted_D"] = number(*s.predicted_d);
    if (s.relative_error_d) o["relative_error_D"] = number(*s.relative_error_d);
}

Json series_json(const Series& s) {
    Json o = Json::object();
    o["label"] = s.label;
    add_fit(o, s);
    add_prediction(o, s);
    o["verdict"] = s.verdict;
    o["accepted_records"] = s.records.size();
    Json rejected = Json::array();
    for (const auto& r : s.rejected) {
        Json j = Json::object();
        j["alpha"] = number(r.alpha);
        j["N"] = r.n;
        j["gate_margin"] = number(r.gate_margin);
        j["diagnostic"] = r.diagnostic;
        rejected.push_back(j);
    }
    o["rejected"] = rejected;
    return o;
}

void add_run_fields(Json& o, const OutputOptions& options) {
    o["deterministic"] = options.deterministic;
    if (!options.deterministic && options.elapsed_seconds) o["elapsed_seconds"] = number(*options.elapsed_seconds);
}

std::string csv_name(std::size_t index) {
    return index == 0 ? "sweep.csv" : "sweep_" + std::to_string(index) + ".csv";
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sweep_csv(const Series& series) {
    std::string out = "alpha,N,measured,predicted,gate_margin\n";
    for (const auto& r : series.records)
        out += format_number(r.alpha) + "," + std::to_string(r.n) + "," + format_number(r.measured) + "," +
               format_number(r.predicted) + "," + format_number(r.gate_margin) + "\n";
    return out;
}

std::string sweep_summary_json(const SweepResult& result, const OutputOptions& options) {
    Json o = Json::object();
    o["experiment"] = to_string(result.experiment);
    o["dimension"] = result.dimension;
    if (!result.series.empty()) {
        add_fit(o, result.series.front());
        add_prediction(o, result.series.front());
    }
    bool any_data = false;
    for (const auto& s : result.series) any_data = any_data || s.fit.has_value();
    o["verdict"] = !any_data ? "insufficient_data" : result.passed() ? "pass" : "fail";

    o["series"] = Json::array();
    for (const auto& s : result.series) o["series"].push_back(series_json(s));
    o["checks"] = Json::array();
    for (const auto& c : result.checks) o["checks"].push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    o["warnings"] = result.warnings;
    add_run_fields(o, options);
    return render(o);
}

std::string plot_script(const SweepResult& result) {
    std::string out = "set datafile separator ','\n"
                      "set logscale x\n"
                      "set key top left\n"
                      "set xlabel 'alpha'\n"
                      "set ylabel '" + to_string(result.experiment) + "'\n";
    std::string plot;
    for (std::size_t i = 0; i < result.series.size(); ++i) {
        if (result.series[i].records.empty()) continue;
        const std::string file = csv_name(i);
        const std::string label = result.series[i].label;
        if (!plot.empty()) plot += ", \\\n     ";
        plot += "'" + file + "' using 1:3 skip 1 with points title 'measured " + label + "'";
        plot += ", '" + file + "' using 1:4 skip 1 with lines title 'predicted " + label + "'";
    }
    if (plot.empty()) return out + "# no accepted records\n";
    return out + "plot " + plot + "\n";
}

std::vector<std::filesystem::path> write_outputs(const SweepResult& result, const std::filesystem::path& dir,
                                                 const OutputOptions& options) {
    std::vector<std::pair<std::filesystem::path, std::string>> files;
    for (std::size_t i = 0; i < result.series.size(); ++i)
        if (!result.series[i].records.empty()) files.emplace_back(dir / csv_name(i), sweep_csv(result.series[i]));
    files.emplace_back(dir / "summary.json", sweep_summary_json(result, options));
    files.emplace_back(dir / "plot.gp", plot_script(result));

    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [path, content] : files) {
        write_file_atomic(path, content);
        written.push_back(path);
    }
    return written;
}

std::vector<std::filesystem::path> write_suite_outputs(const SuiteReport& report, const std::filesystem::path& dir,
                                                       const OutputOptions& options) {
    Json o = Json::object();
    o["experiment"] = report.name;
    o["verdict"] = report.passed() ? "pass" : "fail";
    o["checks"] = Json::array();
    for (const auto& c : report.checks) {
        Json j = Json::object();
        j["name"] = c.name;
        j["alpha"] = number(c.alpha);
        j["deviation"] = number(c.deviation);
        j["tolerance"] = number(c.tolerance);
        j["passed"] = c.passed;
        j["skipped"] = c.skipped;
        j["detail"] = c.detail;
        o["checks"].push_back(j);
    }
    add_run_fields(o, options);

    std::vector<std::pair<std::filesystem::path, std::string>> files;
    files.emplace_back(dir / "summary.json", render(o));
    if (!report.table.empty()) {
        std::string csv;
        for (std::size_t i = 0; i < report.columns.size(); ++i) csv += (i ? "," : "") + report.columns[i];
        csv += "\n";
        for (const auto& row : report.table) {
            for (std::size_t i = 0; i < row.size(); ++i) csv += (i ? "," : "") + format_number(row[i]);
            csv += "\n";
        }
        files.emplace_back(dir / "growth.csv", csv);
    }

    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [path, content] : files) {
        write_file_atomic(path, content);
        written.push_back(path);
    }
    return written;
}

} // namespace hankel

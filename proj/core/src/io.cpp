#include "prophet/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace prophet {

using nlohmann::json;

ReportFormat parse_format(const std::string& name) {
    if (name == "table") return ReportFormat::Table;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format '" + name + "' (expected table|csv|json)");
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw std::invalid_argument("instance schema error at " + path + ": " + what);
}

double require_number(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) schema_error(path, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) schema_error(path + "." + key, "expected a number");
    return v.get<double>();
}

Dist dist_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    if (!j.contains("type")) schema_error(path, "missing field 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "uniform") {
        return Dist::uniform(require_number(j, "a", path), require_number(j, "b", path));
    }
    if (type == "pointmass") {
        return Dist::point(require_number(j, "v", path));
    }
    if (type == "discrete") {
        if (!j.contains("points") || !j.at("points").is_array())
            schema_error(path, "discrete needs a 'points' array");
        std::vector<std::pair<double, double>> pts;
        int k = 0;
        for (const json& p : j.at("points")) {
            const std::string pp = path + ".points[" + std::to_string(k++) + "]";
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                schema_error(pp, "expected [value, mass]");
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return Dist::discrete(std::move(pts));
    }
    if (type == "mixture") {
        if (!j.contains("weights") || !j.contains("components"))
            schema_error(path, "mixture needs 'weights' and 'components'");
        const json& jw = j.at("weights");
        const json& jc = j.at("components");
        if (!jw.is_array() || !jc.is_array() || jw.size() != jc.size())
            schema_error(path, "weights/components must be arrays of equal length");
        std::vector<double> weights;
        std::vector<Dist> comps;
        for (std::size_t i = 0; i < jw.size(); ++i) {
            if (!jw[i].is_number())
                schema_error(path + ".weights[" + std::to_string(i) + "]", "expected a number");
            weights.push_back(jw[i].get<double>());
            comps.push_back(
                dist_from_json(jc[i], path + ".components[" + std::to_string(i) + "]"));
        }
        return Dist::mixture(weights, comps);
    }
    if (type == "linear") {
        return Dist::linear(require_number(j, "lo", path), require_number(j, "hi", path),
                            require_number(j, "f_lo", path), require_number(j, "f_hi", path));
    }
    schema_error(path + ".type", "unknown distribution type '" + type + "'");
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("invalid JSON input");
    return j;
}

std::string format_value(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

Dist dist_from_json_text(const std::string& text) {
    return dist_from_json(parse_text(text), "$");
}

Instance instance_from_json_text(const std::string& text) {
    json j = parse_text(text);
    const json* boxes = nullptr;
    std::string base = "$";
    if (j.is_array()) {
        boxes = &j;
    } else if (j.is_object() && j.contains("boxes") && j.at("boxes").is_array()) {
        boxes = &j.at("boxes");
        base = "$.boxes";
    } else {
        schema_error("$", "expected an array of distributions or {\"boxes\": [...]}");
    }
    std::vector<Dist> dists;
    int k = 0;
    for (const json& jb : *boxes)
        dists.push_back(dist_from_json(jb, base + "[" + std::to_string(k++) + "]"));
    if (dists.empty()) schema_error(base, "no boxes");
    return Instance(std::move(dists));
}

Instance instance_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json_text(buf.str());
}

std::vector<ReportRow> rows_from_case(const CaseReport& rep) {
    std::vector<ReportRow> rows;
    rows.reserve(rep.rows.size());
    for (const CaseRow& r : rep.rows)
        rows.push_back({rep.id, r.quantity, r.value, r.reference,
                        r.ok ? rep.verdict : "FAIL"});
    return rows;
}

std::vector<ReportRow> rows_from_suite(const SuiteResult& s) {
    std::vector<ReportRow> rows;
    rows.push_back({s.id, "failures", static_cast<double>(s.failures),
                    "<= " + std::to_string(s.allowed_failures) + " of " +
                        std::to_string(s.total),
                    s.ok() ? "holds" : "FAIL"});
    rows.push_back({s.id, "worst margin", s.worst_margin, ">= 0 expected",
                    s.ok() ? "holds" : "FAIL"});
    return rows;
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::Csv: {
            out << "case_id,quantity,value,reference,verdict\n";
            for (const ReportRow& r : rows) {
                out << csv_quote(r.case_id) << ',' << csv_quote(r.quantity) << ','
                    << format_value(r.value) << ',' << csv_quote(r.reference) << ','
                    << csv_quote(r.verdict) << '\n';
            }
            return;
        }
        case ReportFormat::Json: {
            json arr = json::array();
            for (const ReportRow& r : rows) {
                arr.push_back({{"case_id", r.case_id},
                               {"quantity", r.quantity},
                               {"value", r.value},
                               {"reference", r.reference},
                               {"verdict", r.verdict}});
            }
            out << arr.dump(2) << '\n';
            return;
        }
        case ReportFormat::Table: {
            std::size_t w0 = 7, w1 = 8, w2 = 12, w3 = 9;
            for (const ReportRow& r : rows) {
                w0 = std::max(w0, r.case_id.size());
                w1 = std::max(w1, r.quantity.size());
                w2 = std::max(w2, format_value(r.value).size());
                w3 = std::max(w3, r.reference.size());
            }
            out << std::left << std::setw(static_cast<int>(w0 + 2)) << "case_id"
                << std::setw(static_cast<int>(w1 + 2)) << "quantity"
                << std::setw(static_cast<int>(w2 + 2)) << "value"
                << std::setw(static_cast<int>(w3 + 2)) << "reference" << "verdict\n";
            for (const ReportRow& r : rows) {
                out << std::left << std::setw(static_cast<int>(w0 + 2)) << r.case_id
                    << std::setw(static_cast<int>(w1 + 2)) << r.quantity
                    << std::setw(static_cast<int>(w2 + 2)) << format_value(r.value)
                    << std::setw(static_cast<int>(w3 + 2)) << r.reference << r.verdict
                    << '\n';
            }
            return;
        }
    }
}

}  // namespace prophet

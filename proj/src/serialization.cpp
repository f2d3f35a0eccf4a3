#include "subopt/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "number_format.hpp"
#include "subopt/errors.hpp"
#include "subopt/solver.hpp"

namespace subopt {

using detail::format_17;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Endpoint as a JSON token: a number, or a quoted "inf"/"-inf".
std::string endpoint_token(double x) {
    if (x == kInf) return "\"inf\"";
    if (x == -kInf) return "\"-inf\"";
    return format_17(x);
}

std::string support_json(const IntervalUnion& support) {
    std::ostringstream os;
    os << "[";
    const auto& iv = support.parts();
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (i) os << ", ";
        os << "[" << endpoint_token(iv[i].lo) << ", " << endpoint_token(iv[i].hi) << "]";
    }
    os << "]";
    return os.str();
}

double endpoint_from_json(const nlohmann::json& token) {
    if (token.is_string()) {
        const std::string s = token.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw parse_error("invalid interval endpoint string: \"" + s + "\"");
    }
    if (token.is_number()) return token.get<double>();
    throw parse_error("interval endpoint must be a number or \"inf\"/\"-inf\"");
}

std::string number_array_json(const std::vector<double>& values) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << format_17(values[i]);
    }
    os << "]";
    return os.str();
}

} // namespace

std::string design_to_json(const SubsamplingDesign& design) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"dist\": \"" << design.dist().spec_string() << "\",\n";
    os << "  \"alpha\": " << format_17(design.alpha()) << ",\n";
    os << "  \"support\": " << support_json(design.support()) << ",\n";
    os << "  \"degree\": " << design.degree_hint() << "\n";
    os << "}\n";
    return os.str();
}

SubsamplingDesign design_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid design JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("design JSON must be an object");
    for (const char* key : {"dist", "alpha", "support", "degree"}) {
        if (!j.contains(key)) {
            throw parse_error(std::string("design JSON is missing \"") + key + "\"");
        }
    }
    if (!j["dist"].is_string()) throw parse_error("\"dist\" must be a string");
    if (!j["alpha"].is_number()) throw parse_error("\"alpha\" must be a number");
    if (!j["support"].is_array()) throw parse_error("\"support\" must be an array");
    if (!j["degree"].is_number_integer()) throw parse_error("\"degree\" must be an integer");

    double alpha = j["alpha"].get<double>();
    std::vector<Interval> parts;
    for (const auto& pair : j["support"]) {
        if (!pair.is_array() || pair.size() != 2) {
            throw parse_error("each support entry must be a two-element array");
        }
        parts.push_back({endpoint_from_json(pair[0]), endpoint_from_json(pair[1])});
    }
    int degree = j["degree"].get<int>();
    try {
        CovariateDistribution dist = CovariateDistribution::parse(j["dist"].get<std::string>());
        return SubsamplingDesign(dist, alpha, IntervalUnion(std::move(parts)), degree);
    } catch (const invalid_argument_error& e) {
        throw parse_error(std::string("design JSON failed validation: ") + e.what());
    }
}

SubsamplingDesign load_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open design file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return design_from_json(buffer.str());
}

void save_design_file(const std::string& path, const SubsamplingDesign& design) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write design file: " + path);
    out << design_to_json(design);
    if (!out) throw parse_error("failed while writing design file: " + path);
}

std::string solve_report_to_json(const SolveReport& report) {
    const SubsamplingDesign& design = report.design;
    std::ostringstream os;
    os << "{\n";
    os << "  \"dist\": \"" << design.dist().spec_string() << "\",\n";
    os << "  \"alpha\": " << format_17(design.alpha()) << ",\n";
    os << "  \"support\": " << support_json(design.support()) << ",\n";
    os << "  \"degree\": " << design.degree_hint() << ",\n";
    os << "  \"report\": {\n";
    os << "    \"branch\": \"" << to_string(report.branch) << "\",\n";
    os << "    \"boundaries\": " << number_array_json(report.boundaries) << ",\n";
    os << "    \"r\": " << report.r << ",\n";
    os << "    \"threshold\": " << format_17(report.threshold) << ",\n";
    os << "    \"logdet\": " << format_17(report.logdet) << ",\n";
    os << "    \"residuals\": " << number_array_json(report.residuals) << ",\n";
    os << "    \"iterations\": " << report.iterations << ",\n";
    os << "    \"equivalence_ok\": " << (report.equivalence_ok ? "true" : "false") << "\n";
    os << "  }\n";
    os << "}\n";
    return os.str();
}

std::string equivalence_report_to_json(const EquivalenceReport& report) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"passed\": " << (report.passed ? "true" : "false") << ",\n";
    os << "  \"threshold\": " << format_17(report.threshold) << ",\n";
    os << "  \"min_on_support\": " << format_17(report.min_on_support) << ",\n";
    os << "  \"max_off_support\": " << format_17(report.max_off_support) << ",\n";
    os << "  \"tolerance\": " << format_17(report.tolerance) << ",\n";
    os << "  \"grid_points\": " << report.grid_points << ",\n";
    os << "  \"violations\": [";
    for (std::size_t i = 0; i < report.violations.size(); ++i) {
        if (i) os << ",";
        const Violation& v = report.violations[i];
        os << "\n    {\"x\": " << format_17(v.x) << ", \"psi\": " << format_17(v.psi)
           << ", \"side\": \"" << v.side << "\"}";
    }
    if (!report.violations.empty()) os << "\n  ";
    os << "]\n";
    os << "}\n";
    return os.str();
}

} // namespace subopt

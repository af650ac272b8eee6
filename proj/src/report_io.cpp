#include "maxplus/report_io.hpp"

#include <cstdio>
#include <cstdlib>

namespace maxplus {

std::string format_sig6(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double round_sig6(double x) { return std::strtod(format_sig6(x).c_str(), nullptr); }

nlohmann::json report_to_json(const BoundReport& report)
{
    nlohmann::json j;
    j["kind"] = to_string(report.kind);
    if (report.l) {
        j["l"] = *report.l;
    }
    j["m"] = report.m;
    if (report.unbounded) {
        j["value"] = nullptr;
        j["unbounded"] = true;
    } else {
        j["value"] = round_sig6(report.value);
    }
    j["stderr"] = round_sig6(report.std_error);
    j["method"] = to_string(report.method);
    j["inputs"] = report.inputs;
    if (!report.note.empty()) {
        j["note"] = report.note;
    }
    return j;
}

BoundReport report_from_json(const nlohmann::json& record)
{
    try {
        BoundReport r;
        r.kind = bound_kind_from_string(record.at("kind").get<std::string>());
        if (record.contains("l")) {
            r.l = record.at("l").get<unsigned>();
        }
        r.m = record.at("m").get<unsigned>();
        r.unbounded = record.value("unbounded", false);
        r.value = record.at("value").is_null() ? eps : record.at("value").get<double>();
        r.std_error = record.at("stderr").get<double>();
        r.method = method_from_string(record.at("method").get<std::string>());
        r.inputs = record.at("inputs").get<std::vector<std::string>>();
        r.note = record.value("note", std::string{});
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed bound record: ") + e.what());
    }
}

std::string report_to_csv(const BoundReport& report)
{
    std::string line = to_string(report.kind) + ",";
    if (report.l) {
        line += std::to_string(*report.l);
    }
    line += "," + std::to_string(report.m) + ",";
    line += report.unbounded ? std::string("-inf") : format_sig6(report.value);
    line += "," + format_sig6(report.std_error) + "," + to_string(report.method);
    return line;
}

nlohmann::json best_to_json(const BestBounds& best)
{
    nlohmann::json j = nlohmann::json::object();
    if (best.lower) {
        j["lower"] = round_sig6(best.lower->value);
        j["lower_stderr"] = round_sig6(best.lower->std_error);
        j["lower_kind"] = to_string(best.lower->kind);
    } else {
        j["lower"] = nullptr;
    }
    if (best.upper) {
        j["upper"] = round_sig6(best.upper->value);
        j["upper_stderr"] = round_sig6(best.upper->std_error);
        j["upper_kind"] = to_string(best.upper->kind);
    } else {
        j["upper"] = nullptr;
    }
    return j;
}

std::vector<std::string> best_to_csv(const BestBounds& best)
{
    auto row = [](const char* name, const BoundReport& r) {
        std::string line = std::string(name) + ",";
        if (r.l) {
            line += std::to_string(*r.l);
        }
        line += "," + std::to_string(r.m) + "," + format_sig6(r.value) + "," + format_sig6(r.std_error) + "," +
                to_string(r.method);
        return line;
    };
    std::vector<std::string> rows;
    if (best.lower) {
        rows.push_back(row("best_lower", *best.lower));
    }
    if (best.upper) {
        rows.push_back(row("best_upper", *best.upper));
    }
    return rows;
}

nlohmann::json lambda_to_json(const LambdaEstimate& est)
{
    nlohmann::json per = nlohmann::json::array();
    for (double v : est.per_replicate) {
        per.push_back(round_sig6(v));
    }
    return {{"lambda_hat", round_sig6(est.lambda_hat)},
            {"stderr", round_sig6(est.std_error)},
            {"replications", est.replications},
            {"horizon", est.horizon},
            {"per_replicate", std::move(per)}};
}

LambdaEstimate lambda_from_json(const nlohmann::json& record)
{
    try {
        LambdaEstimate est;
        est.lambda_hat = record.at("lambda_hat").get<double>();
        est.std_error = record.at("stderr").get<double>();
        est.replications = record.at("replications").get<std::size_t>();
        est.horizon = record.at("horizon").get<std::uint64_t>();
        est.per_replicate = record.at("per_replicate").get<std::vector<double>>();
        return est;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed lambda record: ") + e.what());
    }
}

std::string lambda_to_csv(const LambdaEstimate& est)
{
    std::string line = format_sig6(est.lambda_hat) + "," + format_sig6(est.std_error) + "," +
                       std::to_string(est.replications) + "," + std::to_string(est.horizon) + ",";
    for (std::size_t r = 0; r < est.per_replicate.size(); ++r) {
        if (r > 0) {
            line += ';';
        }
        line += format_sig6(est.per_replicate[r]);
    }
    return line;
}

}  // namespace maxplus

#include "maxplus/model_io.hpp"

#include <fstream>

namespace maxplus {

namespace {

double number_field(const nlohmann::json& doc, const char* key)
{
    if (!doc.contains(key)) {
        throw ModelError(std::string("missing field '") + key + "'");
    }
    const auto& v = doc.at(key);
    if (v.is_string() && v.get<std::string>() == "eps") {
        return eps;
    }
    if (!v.is_number()) {
        throw ModelError(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

Atom atom_from_json(const nlohmann::json& a)
{
    if (a.is_array() && a.size() == 2) {
        const auto& v = a[0];
        double value = 0.0;
        if (v.is_string() && v.get<std::string>() == "eps") {
            value = eps;
        } else if (v.is_number()) {
            value = v.get<double>();
        } else {
            throw ModelError("atom value must be a number");
        }
        if (!a[1].is_number()) {
            throw ModelError("atom probability must be a number");
        }
        return Atom{value, a[1].get<double>()};
    }
    if (a.is_object()) {
        return Atom{number_field(a, "value"), number_field(a, "prob")};
    }
    throw ModelError("atom must be {\"value\", \"prob\"} or a [value, prob] pair");
}

}  // namespace

DistributionSpec dist_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("dist") || !doc.at("dist").is_string()) {
        throw ModelError("entry must be an object with a string 'dist' field");
    }
    const auto kind = doc.at("dist").get<std::string>();
    DistributionSpec dist;
    if (kind == "exponential") {
        dist = Exponential{number_field(doc, "mean")};
    } else if (kind == "uniform") {
        dist = Uniform{number_field(doc, "lo"), number_field(doc, "hi")};
    } else if (kind == "discrete") {
        if (!doc.contains("atoms") || !doc.at("atoms").is_array()) {
            throw ModelError("discrete distribution needs an 'atoms' array");
        }
        Discrete d;
        for (const auto& a : doc.at("atoms")) {
            d.atoms.push_back(atom_from_json(a));
        }
        dist = std::move(d);
    } else if (kind == "constant") {
        dist = Constant{number_field(doc, "value")};
    } else {
        throw ModelError("unknown distribution '" + kind + "'");
    }
    validate(dist);
    return dist;
}

nlohmann::json dist_to_json(const DistributionSpec& dist)
{
    nlohmann::json j;
    j["dist"] = dist_name(dist);
    if (const auto* e = std::get_if<Exponential>(&dist)) {
        j["mean"] = e->mean;
    } else if (const auto* u = std::get_if<Uniform>(&dist)) {
        j["lo"] = u->lo;
        j["hi"] = u->hi;
    } else if (const auto* d = std::get_if<Discrete>(&dist)) {
        j["atoms"] = nlohmann::json::array();
        for (const Atom& a : d->atoms) {
            j["atoms"].push_back({{"value", a.value}, {"prob", a.prob}});
        }
    } else if (const auto* c = std::get_if<Constant>(&dist)) {
        j["value"] = c->value;
    }
    return j;
}

MatrixModel model_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object()) {
        throw ModelError("model document must be a JSON object");
    }
    if (!doc.contains("n") || !doc.at("n").is_number_integer() || doc.at("n").get<long long>() < 1) {
        throw ModelError("model needs a positive integer 'n'");
    }
    const auto n = static_cast<std::size_t>(doc.at("n").get<long long>());
    if (!doc.contains("entries")) {
        throw ModelError("model needs an 'entries' field");
    }
    const auto& entries = doc.at("entries");
    if (entries.is_string()) {
        if (entries.get<std::string>() != "all") {
            throw ModelError("'entries' must be \"all\" or an n x n array");
        }
        // The shorthand keeps the distribution fields at the top level.
        return MatrixModel::uniform_grid(n, dist_from_json(doc));
    }
    if (!entries.is_array() || entries.size() != n) {
        throw ModelError("'entries' must have n rows");
    }
    std::vector<DistributionSpec> grid;
    grid.reserve(n * n);
    for (const auto& row : entries) {
        if (!row.is_array() || row.size() != n) {
            throw ModelError("every 'entries' row must have n items");
        }
        for (const auto& e : row) {
            grid.push_back(dist_from_json(e));
        }
    }
    return MatrixModel(n, std::move(grid));
}

MatrixModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ModelError("cannot open model file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return model_from_json(doc);
}

nlohmann::json model_to_json(const MatrixModel& model)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < model.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < model.n(); ++j) {
            row.push_back(dist_to_json(model.entry(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", model.n()}, {"entries", std::move(rows)}};
}

}  // namespace maxplus

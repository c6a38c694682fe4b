#include "levy/model_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace levy {

namespace {

using nlohmann::json;

double number_field(const json& obj, const std::string& key, const std::string& path,
                    std::optional<double> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError(path + key + ": missing");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(path + key + ": expected a number");
    return v.get<double>();
}

std::vector<double> array_field(const json& obj, const std::string& key, const std::string& path,
                                bool required) {
    if (!obj.contains(key)) {
        if (required) throw ValidationError(path + key + ": missing");
        return {};
    }
    const json& v = obj.at(key);
    if (!v.is_array()) throw ValidationError(path + key + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number()) throw ValidationError(path + key + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

LevyMeasureSpec parse_measure(const json& m) {
    const std::string p = "measure.";
    if (!m.is_object()) throw ValidationError("measure: expected an object");
    if (!m.contains("family") || !m.at("family").is_string())
        throw ValidationError("measure.family: missing or not a string");
    const std::string fam = m.at("family").get<std::string>();
    if (fam == "TruncatedStable") {
        TruncatedStable f;
        f.alpha = number_field(m, "alpha", p);
        f.c_plus = number_field(m, "c_plus", p, f.alpha / 2.0);
        f.c_minus = number_field(m, "c_minus", p, f.alpha / 2.0);
        return f;
    }
    if (fam == "LogTemperedStable") {
        LogTemperedStable f;
        f.beta = number_field(m, "beta", p);
        f.kappa = number_field(m, "kappa", p);
        return f;
    }
    if (fam == "Example15") return Example15{};
    if (fam == "CompoundPoisson") {
        CompoundPoisson f;
        f.rate = number_field(m, "rate", p);
        const std::string jump = m.contains("jump") && m.at("jump").is_string()
                                     ? m.at("jump").get<std::string>()
                                     : std::string("normal");
        if (jump == "normal") {
            f.law = JumpLaw::Normal;
            f.jump_mean = number_field(m, "jump_mean", p, 0.0);
            f.jump_sd = number_field(m, "jump_sd", p, 1.0);
        } else if (jump == "constant") {
            f.law = JumpLaw::Constant;
            f.jump_mean = number_field(m, "jump_size", p,
                                       m.contains("jump_mean") ? std::optional<double>(number_field(m, "jump_mean", p))
                                                               : std::nullopt);
            f.jump_sd = 0.0;
        } else {
            throw ValidationError("measure.jump: expected \"normal\" or \"constant\"");
        }
        return f;
    }
    if (fam == "TabulatedTail") {
        auto u = array_field(m, "u", p, true);
        auto nu = array_field(m, "nu_bar", p, true);
        auto sig = array_field(m, "sigma_bar_sq", p, false);
        std::optional<double> bg;
        if (m.contains("bg_index")) bg = number_field(m, "bg_index", p);
        return TabulatedTail(std::move(u), std::move(nu), std::move(sig), bg);
    }
    if (fam == "Zero") return ZeroMeasure{};
    throw ValidationError("measure.family: unknown family \"" + fam + "\"");
}

json measure_to_json(const LevyMeasureSpec& spec) {
    json m;
    m["family"] = family_name(spec);
    if (const auto* f = std::get_if<TruncatedStable>(&spec)) {
        m["alpha"] = f->alpha;
        m["c_plus"] = f->c_plus;
        m["c_minus"] = f->c_minus;
    } else if (const auto* f = std::get_if<LogTemperedStable>(&spec)) {
        m["beta"] = f->beta;
        m["kappa"] = f->kappa;
    } else if (const auto* f = std::get_if<CompoundPoisson>(&spec)) {
        m["rate"] = f->rate;
        if (f->law == JumpLaw::Normal) {
            m["jump"] = "normal";
            m["jump_mean"] = f->jump_mean;
            m["jump_sd"] = f->jump_sd;
        } else {
            m["jump"] = "constant";
            m["jump_size"] = f->jump_mean;
        }
    } else if (const auto* f = std::get_if<TabulatedTail>(&spec)) {
        m["u"] = f->u();
        m["nu_bar"] = f->nu_bar_values();
        if (f->has_sigma_column()) m["sigma_bar_sq"] = f->sigma_bar_sq_values();
        if (f->declared_bg_index()) m["bg_index"] = *f->declared_bg_index();
    }
    return m;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

// u = 2^{-k}, k = k_max..k_min, in increasing order.
std::vector<double> dyadic_grid(int k_min, int k_max) {
    std::vector<double> u;
    for (int k = k_max; k >= k_min; --k) u.push_back(std::ldexp(1.0, -k));
    return u;
}

} // namespace

LevyModel parse_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("model document: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("model document: expected a JSON object");
    const double sigma2 = number_field(doc, "sigma2", "", 0.0);
    const double drift = number_field(doc, "drift", "", 0.0);
    if (!doc.contains("measure")) throw ValidationError("measure: missing");
    std::string label;
    if (doc.contains("label")) {
        if (!doc.at("label").is_string()) throw ValidationError("label: expected a string");
        label = doc.at("label").get<std::string>();
    }
    return LevyModel(sigma2, drift, parse_measure(doc.at("measure")), label);
}

std::string model_to_json(const LevyModel& model) {
    json doc;
    doc["sigma2"] = model.sigma2();
    doc["drift"] = model.drift();
    if (!model.label().empty()) doc["label"] = model.label();
    doc["measure"] = measure_to_json(model.measure());
    return doc.dump(2);
}

std::vector<std::string> builtin_model_names() {
    return {"brownian",   "brownian-jumps", "drift",          "stable-<alpha>",
            "log-tempered-<beta>-<kappa>", "example15", "cauchy-tab", "i2-tab",
            "lambda-inf-tab", "hstar-a", "hstar-b"};
}

std::optional<LevyModel> builtin_model(const std::string& name) {
    if (name == "brownian") return LevyModel(1.0, 0.0, ZeroMeasure{}, name);
    if (name == "brownian-jumps")
        return LevyModel(1.0, 0.0, TruncatedStable{1.5, 0.75, 0.75}, name);
    if (name == "drift") return LevyModel(0.0, 1.0, ZeroMeasure{}, name);
    if (name == "example15") return LevyModel(0.0, 0.0, Example15{}, name);

    const std::string stable = "stable-";
    if (name.rfind(stable, 0) == 0) {
        double a = 0.0;
        if (!parse_double(name.substr(stable.size()), a)) return std::nullopt;
        return LevyModel(0.0, 0.0, TruncatedStable{a, a / 2.0, a / 2.0}, name);
    }
    const std::string lt = "log-tempered-";
    if (name.rfind(lt, 0) == 0) {
        const std::string rest = name.substr(lt.size());
        const auto dash = rest.find('-');
        double b = 0.0, k = 0.0;
        if (dash == std::string::npos || !parse_double(rest.substr(0, dash), b) ||
            !parse_double(rest.substr(dash + 1), k))
            return std::nullopt;
        return LevyModel(0.0, 0.0, LogTemperedStable{b, k}, name);
    }

    if (name == "cauchy-tab") {
        auto u = dyadic_grid(0, 990);
        std::vector<double> nu;
        for (double x : u) nu.push_back(1.0 / x);
        return LevyModel(0.0, 0.0, TabulatedTail(u, nu), name);
    }
    if (name == "i2-tab") {
        // nu_bar(u) = u^{-2} (2 + log(1/u))^{-3}, u down to 2^{-480}.
        auto u = dyadic_grid(0, 480);
        std::vector<double> nu;
        for (double x : u) {
            const double L = -std::log(x);
            nu.push_back(std::exp(2.0 * L - 3.0 * std::log(2.0 + L)));
        }
        return LevyModel(0.0, 0.0, TabulatedTail(u, nu, {}, 2.0), name);
    }
    if (name == "lambda-inf-tab") {
        auto u = dyadic_grid(0, 480);
        std::vector<double> nu, sig(u.size(), 1.0);
        for (double x : u) nu.push_back(1.0 / (x * x));
        return LevyModel(0.0, 0.0, TabulatedTail(u, nu, sig, 2.0), name);
    }
    if (name == "hstar-a") {
        auto u = dyadic_grid(1, 480);
        std::vector<double> nu(u.size(), 1.0), sig;
        for (double x : u) sig.push_back(1.0 / -std::log(x));
        return LevyModel(0.0, 0.0, TabulatedTail(u, nu, sig, 2.0), name);
    }
    if (name == "hstar-b") {
        auto u = dyadic_grid(1, 300);
        std::vector<double> nu(u.size(), 1e-12), sig;
        for (double x : u) sig.push_back(x * x * x);
        return LevyModel(0.0, 1.0, TabulatedTail(u, nu, sig, 0.0), name);
    }
    return std::nullopt;
}

LevyModel load_model(const std::string& path_or_name) {
    if (!std::filesystem::exists(path_or_name)) {
        if (auto m = builtin_model(path_or_name)) return *m;
        throw ValidationError("model: no such file or built-in fixture: " + path_or_name);
    }
    std::ifstream in(path_or_name);
    if (!in) throw ValidationError("model: cannot read " + path_or_name);
    std::ostringstream ss;
    ss << in.rdbuf();
    LevyModel m = parse_model(ss.str());
    if (m.label().empty())
        return LevyModel(m.sigma2(), m.drift(), m.measure(),
                         std::filesystem::path(path_or_name).stem().string());
    return m;
}

} // namespace levy

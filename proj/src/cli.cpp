#include "levy/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "levy/classifier.hpp"
#include "levy/diagnostics.hpp"
#include "levy/errors.hpp"
#include "levy/integrals.hpp"
#include "levy/minorant.hpp"
#include "levy/model_io.hpp"
#include "levy/pathsim.hpp"

namespace levy::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersionLine = "# levy-minorant v1";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v, int digits = 17) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string short_num(double v) { return num(v, 7); }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_table(const Table& t, const std::string& path, const std::string& format) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : t.rows) {
            json o = json::object();
            for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = r[c];
            rows.push_back(o);
        }
        json doc = {{"format", "levy-minorant v1"}, {"columns", t.columns}, {"rows", rows}};
        f << doc.dump(2) << '\n';
    } else {
        f << kVersionLine << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c) f << (c ? "," : "") << t.columns[c];
        f << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                std::string cell = r[c];
                std::replace(cell.begin(), cell.end(), ',', ';');
                f << (c ? "," : "") << cell;
            }
            f << '\n';
        }
    }
    if (!f) throw IoError("write failed for " + path);
}

// Reads a CSV (comment lines start with '#') or the JSON layout written above.
Table read_table(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    Table t;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const json doc = json::parse(text);
        t.columns = doc.at("columns").get<std::vector<std::string>>();
        for (const auto& r : doc.at("rows")) {
            std::vector<std::string> row;
            for (const auto& c : t.columns) {
                const auto& v = r.at(c);
                row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
            t.rows.push_back(row);
        }
        return t;
    }
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(s);
        while (std::getline(ls, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            out.push_back(cell);
        }
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "\r") continue;
        if (t.columns.empty()) t.columns = split(line);
        else t.rows.push_back(split(line));
    }
    return t;
}

std::vector<double> column(const Table& t, const std::string& name, const std::string& path) {
    std::size_t idx = t.columns.size();
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        if (t.columns[c] == name) idx = c;
    if (idx == t.columns.size()) throw ValidationError(path + ": missing column '" + name + "'");
    std::vector<double> v;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (idx >= t.rows[r].size()) throw ValidationError(path + ": short row " + std::to_string(r + 1));
        try {
            v.push_back(std::stod(t.rows[r][idx]));
        } catch (const std::exception&) {
            throw ValidationError(path + ": row " + std::to_string(r + 1) + " column '" + name + "' is not a number");
        }
    }
    return v;
}

struct Options {
    std::string model;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::string format = "csv";
    // classify
    double r = 0.5;
    std::string h, r_grid;
    // integrals
    std::vector<double> p;
    // simulate / minorant / verify
    double T = 1.0;
    int steps = 1000;
    int faces = 0;
    std::string path_file, faces_file, fixture, stats;
    // estimate
    std::string criterion;
    double beta = 2.0, R = 1.0, q = 2.0, t = 0.01;
    int depth = 20, N = 64;
    std::uint64_t mc = 10000, seeds = 1000;
};

void emit(const Options& o, const Table& t) {
    if (!o.out.empty()) write_table(t, o.out, o.format);
}

json verdict_json(const HolderVerdict& v) {
    json inputs = json::array();
    for (const auto& [name, iv] : v.inputs) {
        json e = {{"name", name}, {"status", to_string(iv.status)}};
        if (iv.finite()) e["value"] = iv.value;
        inputs.push_back(e);
    }
    return {{"answer", to_string(v.answer)}, {"clause", v.clause}, {"inputs", inputs}, {"note", v.note}};
}

std::vector<double> parse_grid(const std::string& spec) {
    double a, b, step;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || b < a)
        throw ValidationError("--r-grid expects a:b:step with a <= b and step > 0");
    std::vector<double> g;
    const int n = static_cast<int>(std::floor((b - a) / step + 1e-9));
    for (int i = 0; i <= n; ++i) g.push_back(a + i * step);
    return g;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const LevyModel m = load_model(o.model);
    if (variation_class(m) == Variation::FiniteVariation) {
        HolderVerdict v;
        v.answer = Answer::Yes;
        v.clause = "fv";
        v.note = "finite variation: the minorant is Lipschitz";
        if (o.format == "json" && o.out.empty()) out << verdict_json(v).dump() << '\n';
        else out << "Yes clause=fv model=" << m.label() << " (" << v.note << ")\n";
        emit(o, {{"answer", "clause"}, {{"Yes", "fv"}}});
        return Ok;
    }
    if (!o.r_grid.empty()) {
        Table t{{"r", "answer", "clause"}, {}};
        int yes = 0, no = 0, inc = 0;
        for (double r : parse_grid(o.r_grid)) {
            const HolderVerdict v = classify_r(m, r);
            t.rows.push_back({num(r), to_string(v.answer), v.clause});
            (v.answer == Answer::Yes ? yes : v.answer == Answer::No ? no : inc)++;
        }
        emit(o, t);
        out << "grid=" << o.r_grid << " Yes=" << yes << " No=" << no << " Inconclusive=" << inc
            << " critical=" << short_num(critical_exponent(m)) << " model=" << m.label() << '\n';
        return inc ? Inconclusive : Ok;
    }
    HolderVerdict v;
    std::string what;
    if (!o.h.empty()) {
        v = classify_kh(m, HSpec::parse(o.h));
        what = "h=" + o.h;
    } else {
        v = classify_r(m, o.r);
        what = "r=" + short_num(o.r) + " critical=" + short_num(critical_exponent(m));
    }
    if (o.format == "json" && o.out.empty()) {
        out << verdict_json(v).dump() << '\n';
    } else {
        out << to_string(v.answer) << " clause=" << v.clause << " model=" << m.label() << ' ' << what;
        if (!v.note.empty()) out << " note=\"" << v.note << '"';
        out << '\n';
    }
    if (!o.out.empty()) {
        if (o.format == "json") {
            std::ofstream f(o.out, std::ios::binary);
            if (!f || !(f << verdict_json(v).dump(2) << '\n')) throw IoError("cannot write " + o.out);
        } else {
            Table t{{"answer", "clause", "input", "status", "value"}, {}};
            if (v.inputs.empty()) t.rows.push_back({to_string(v.answer), v.clause, "", "", ""});
            for (const auto& [name, iv] : v.inputs)
                t.rows.push_back({to_string(v.answer), v.clause, name, to_string(iv.status), num(iv.value)});
            emit(o, t);
        }
    }
    return v.answer == Answer::Inconclusive ? Inconclusive : Ok;
}

int cmd_integrals(const Options& o, std::ostream& out) {
    const LevyModel m = load_model(o.model);
    std::vector<double> ps = o.p;
    if (ps.empty()) {
        ps.push_back(1.0);
        const BgIndex bg = bg_index(m);
        if (bg.determined && bg.value > 1.0 && bg.value <= 2.0) ps.push_back(bg.value);
    }
    Table t{{"criterion", "status", "value", "shells_used", "note"}, {}};
    bool undetermined = false;
    auto add = [&](const std::string& name, IntegralStatus s, double v, std::size_t shells, const std::string& note) {
        t.rows.push_back({name, to_string(s), num(v), std::to_string(shells), note});
        undetermined = undetermined || s == IntegralStatus::Undetermined;
        out << name << '=' << to_string(s);
        if (s == IntegralStatus::Finite || (s == IntegralStatus::Infinite && std::isinf(v))) out << '(' << short_num(v) << ')';
        out << ' ';
    };
    for (double p : ps) {
        const IntegralVerdict v = j_p(m, p);
        add("J_" + short_num(p), v.status, v.value, v.shells.size(), v.note);
    }
    if (m.sigma2() == 0.0) {
        const Lambda2Result l = lambda2(m);
        add("lambda2", l.status, l.value, 0, l.note);
    }
    const IntegralVerdict lw = log_weighted_tail(m);
    add("log_weighted_tail", lw.status, lw.value, lw.shells.size(), lw.note);
    const IntegralVerdict bl = big_lambda(m, std::exp(-std::exp(1.0)));
    add("big_lambda", bl.status, bl.value, bl.shells.size(), bl.note);
    out << "model=" << m.label() << '\n';
    emit(o, t);
    return undetermined ? Inconclusive : Ok;
}

// {model, seed, T, N} next to a simulate artifact.
void write_sidecar(const Options& o, const LevyModel& m, int n) {
    if (o.out.empty()) return;
    const std::string path = o.out + ".meta.json";
    std::ofstream f(path, std::ios::binary);
    const json meta = {{"model", m.label()}, {"seed", o.seed}, {"T", o.T}, {"N", n}};
    if (!f || !(f << meta.dump(2) << '\n')) throw IoError("cannot write " + path);
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const LevyModel m = load_model(o.model);
    if (o.faces > 0) {
        const FaceSample fs = stick_breaking_faces(m, o.T, o.faces, o.seed);
        Table t{{"l", "xi"}, {}};
        for (const Face& f : fs.faces) t.rows.push_back({num(f.length), num(f.height)});
        emit(o, t);
        write_sidecar(o, m, o.faces);
        out << "faces=" << fs.faces.size() << " T=" << short_num(o.T) << " residual=" << short_num(fs.residual)
            << " seed=" << o.seed << " model=" << m.label() << '\n';
        return Ok;
    }
    const PathSample p = sample_path(m, o.T, o.steps, o.seed);
    Table t{{"t", "x"}, {}};
    for (std::size_t i = 0; i < p.times.size(); ++i) t.rows.push_back({num(p.times[i]), num(p.values[i])});
    emit(o, t);
    write_sidecar(o, m, o.steps);
    out << "steps=" << o.steps << " T=" << short_num(o.T) << " X_T=" << short_num(p.values.back())
        << " seed=" << o.seed << " model=" << m.label() << '\n';
    return Ok;
}

PiecewiseLinearConvex minorant_input(const Options& o, std::string& source) {
    if (!o.path_file.empty()) {
        const Table t = read_table(o.path_file);
        source = o.path_file;
        return convex_minorant(column(t, "t", o.path_file), column(t, "x", o.path_file));
    }
    if (!o.faces_file.empty()) {
        const Table t = read_table(o.faces_file);
        const auto len = column(t, "l", o.faces_file);
        const auto h = column(t, "xi", o.faces_file);
        std::vector<Face> faces;
        for (std::size_t i = 0; i < len.size(); ++i) faces.push_back({len[i], h[i]});
        source = o.faces_file;
        return PiecewiseLinearConvex::from_unordered_faces(std::move(faces));
    }
    if (!o.fixture.empty()) {
        if (o.fixture != "holder-strict") throw ValidationError("unknown fixture '" + o.fixture + "'");
        source = "holder-strict";
        return holder_strict_fixture(o.r);
    }
    if (o.model.empty()) throw ValidationError("one of --path, --faces, --fixture or --model is required");
    const LevyModel m = load_model(o.model);
    source = m.label();
    if (o.faces > 0)
        return PiecewiseLinearConvex::from_unordered_faces(stick_breaking_faces(m, o.T, o.faces, o.seed).faces);
    return convex_minorant(sample_path(m, o.T, o.steps, o.seed));
}

int cmd_minorant(const Options& o, std::ostream& out) {
    std::string source;
    const PiecewiseLinearConvex c = minorant_input(o, source);
    const RSlopeStats s = verify_sandwich(c, o.r);
    Table t{{"l", "xi", "slope"}, {}};
    for (const Face& f : c.faces()) t.rows.push_back({num(f.length), num(f.height), num(f.height / f.length)});
    emit(o, t);
    if (!o.stats.empty()) {
        std::ofstream f(o.stats, std::ios::binary);
        const json j = {{"r", o.r}, {"k_r", s.k_r}, {"K_r", s.K_r}, {"holder_sup", s.holder_sup},
                        {"faces", s.face_count}};
        if (!f || !(f << j.dump(2) << '\n')) throw IoError("cannot write " + o.stats);
    }
    out << "faces=" << s.face_count << " r=" << short_num(o.r) << " k_r=" << short_num(s.k_r)
        << " sup=" << short_num(s.holder_sup) << " K_r=" << short_num(s.K_r) << " source=" << source << '\n';
    return Ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
    std::string source;
    const PiecewiseLinearConvex c = minorant_input(o, source);
    const RSlopeStats s = verify_sandwich(c, o.r);
    emit(o, {{"r", "k_r", "holder_sup", "K_r", "faces"},
             {{num(o.r), num(s.k_r), num(s.holder_sup), num(s.K_r), std::to_string(s.face_count)}}});
    out << "(k, sup, K) = (" << short_num(s.k_r) << ", " << short_num(s.holder_sup) << ", " << short_num(s.K_r)
        << ") r=" << short_num(o.r) << " source=" << source << " sandwich=ok\n";
    return Ok;
}

void add_levels(Table& t, const std::string& series, const EstimateWithCI& e) {
    for (const auto& l : e.levels)
        t.rows.push_back({series, num(l.truncation), num(l.estimate), num(l.std_error), to_string(e.trend)});
}

int cmd_estimate(const Options& o, std::ostream& out) {
    const LevyModel m = load_model(o.model);
    McOptions mo;
    mo.depth = o.depth;
    mo.mc = o.mc;
    mo.seed = o.seed;
    Table t{{"series", "truncation", "estimate", "std_error", "trend"}, {}};
    int code = Ok;
    if (o.criterion == "ibeta") {
        const EstimateWithCI e = estimate_I_beta(m, o.beta, mo);
        add_levels(t, "I_beta", e);
        out << "I_beta(beta=" << short_num(o.beta) << ")=" << short_num(e.value) << " se=" << short_num(e.std_error)
            << " trend=" << to_string(e.trend);
        if (e.trend == Trend::Flat) code = Inconclusive;
    } else if (o.criterion == "khintchine") {
        const KhintchineReport k = khintchine_integral(m, HSpec::parse(o.h.empty() ? "t^0.5" : o.h), o.R, mo);
        const std::pair<const char*, const IntegralVerdict*> parts[] = {
            {"R", &k.at_R}, {"R/4", &k.at_quarter_R}, {"8R", &k.at_eight_R}};
        for (const auto& [name, v] : parts) {
            double total = 0.0;
            for (const Shell& s : v->shells) total += s.mass;
            t.rows.push_back({name, num(std::ldexp(1.0, -o.depth)), num(total), "", to_string(v->status)});
            out << "khintchine[" << name << "]=" << to_string(v->status) << ' ';
        }
        out << "R=" << short_num(o.R);
        if (k.at_R.undetermined()) code = Inconclusive;
    } else if (o.criterion == "limsup") {
        const EstimateWithCI e = limsup_estimate(m, HSpec::parse(o.h.empty() ? "lil" : o.h), o.seeds, o.depth, o.seed);
        add_levels(t, "limsup", e);
        out << "limsup=" << short_num(e.value) << " se=" << short_num(e.std_error) << " trend=" << to_string(e.trend);
    } else if (o.criterion == "sbsum") {
        const SbComparison c = sb_sum_vs_integral(m, o.r, o.q, o.N, mo);
        add_levels(t, "sum", c.sum_side);
        add_levels(t, "integral", c.integral_side);
        out << "sum=" << short_num(c.sum_side.value) << '(' << to_string(c.sum_side.trend) << ") integral="
            << short_num(c.integral_side.value) << '(' << to_string(c.integral_side.trend) << ") agree="
            << (c.trends_agree() ? "yes" : "no");
        if (!c.trends_agree() || c.sum_side.trend == Trend::Flat) code = Inconclusive;
    } else if (o.criterion == "maximal") {
        const MaximalReport r = maximal_inequality_check(m, o.R, o.t, o.mc, o.seed,
                                                         HSpec::parse(o.h.empty() ? "t^0.5" : o.h));
        t = Table{{"lhs", "lhs_se", "rhs", "rhs_se", "half_prob", "precondition_ok", "pass"},
                  {{num(r.lhs), num(r.lhs_se), num(r.rhs), num(r.rhs_se), num(r.half_prob),
                    r.precondition_ok ? "true" : "false", r.pass ? "true" : "false"}}};
        out << "lhs=" << short_num(r.lhs) << " rhs=" << short_num(r.rhs) << " half_prob=" << short_num(r.half_prob)
            << " pass=" << (r.pass ? "yes" : "no");
        if (!r.precondition_ok) {
            out << " precondition violated: P(|X_t| >= 2Rh(t)) >= 1/2";
            code = Inconclusive;
        } else if (!r.pass) {
            code = NumericalError;
        }
    } else {
        throw ValidationError("unknown criterion '" + o.criterion + "'");
    }
    out << " model=" << m.label() << " seed=" << o.seed << '\n';
    emit(o, t);
    return code;
}

int cmd_hstar(const Options& o, std::ostream& out) {
    const LevyModel m = load_model(o.model);
    const HstarFunction h = construct_hstar(m);
    Table t{{"n", "t", "level", "u", "witness"}, {}};
    for (std::size_t i = 0; i < h.breakpoints.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), num(h.breakpoints[i]), num(h.levels[i]), num(h.u[i]),
                          num(h.witness[i])});
    emit(o, t);
    out << "case=" << h.case_tag << " breakpoints=" << h.breakpoints.size()
        << " witness=" << short_num(h.witness.empty() ? 0.0 : h.witness.back()) << " model=" << m.label() << '\n';
    return Ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hölder regularity of convex minorants of Lévy processes", "levy-minorant"};
    app.set_help_flag("--help", "print usage");
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s, bool need_model) {
        auto* opt = s->add_option("--model", o.model, "model JSON file or built-in name");
        if (need_model) opt->required();
        s->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
        s->add_option("--out", o.out, "artifact path");
        s->add_option("--format", o.format, "artifact format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* classify = app.add_subcommand("classify", "decide r-Hölder or h-continuity of the minorant");
    common(classify, true);
    auto* r_opt = classify->add_option("--r", o.r, "Hölder exponent in (0,1)");
    auto* h_opt = classify->add_option("--h", o.h, "reference function, e.g. t^0.5*log^1 or lil")->excludes(r_opt);
    classify->add_option("--r-grid", o.r_grid, "grid a:b:step of exponents")->excludes(r_opt)->excludes(h_opt);

    auto* integrals = app.add_subcommand("integrals", "evaluate the integral criteria");
    common(integrals, true);
    integrals->add_option("--p", o.p, "exponents for J_p");

    auto* simulate = app.add_subcommand("simulate", "simulate a path skeleton or stick-breaking faces");
    common(simulate, true);
    simulate->add_option("--T", o.T, "horizon");
    simulate->add_option("--steps", o.steps, "grid steps");
    simulate->add_option("--faces", o.faces, "number of stick-breaking faces");

    auto* minorant = app.add_subcommand("minorant", "convex minorant and r-slope statistics");
    common(minorant, false);
    minorant->add_option("--path", o.path_file, "path CSV (t,x)");
    minorant->add_option("--faces-file", o.faces_file, "faces CSV (l,xi)");
    minorant->add_option("--stats", o.stats, "stats JSON path");
    minorant->add_option("--r", o.r, "exponent");
    minorant->add_option("--T", o.T, "horizon");
    minorant->add_option("--steps", o.steps, "grid steps");
    minorant->add_option("--faces", o.faces, "simulate this many stick-breaking faces");

    auto* verify = app.add_subcommand("verify", "check k_r <= sup <= K_r");
    common(verify, false);
    verify->add_option("--fixture", o.fixture, "built-in fixture")->check(CLI::IsMember({"holder-strict"}));
    verify->add_option("--path", o.path_file, "path CSV (t,x)");
    verify->add_option("--faces-file", o.faces_file, "faces CSV (l,xi)");
    verify->add_option("--r", o.r, "exponent");
    verify->add_option("--T", o.T, "horizon");
    verify->add_option("--steps", o.steps, "grid steps");
    verify->add_option("--faces", o.faces, "simulate this many stick-breaking faces");

    auto* estimate = app.add_subcommand("estimate", "Monte Carlo diagnostics");
    common(estimate, true);
    estimate->add_option("--criterion", o.criterion, "estimator")
        ->required()
        ->check(CLI::IsMember({"ibeta", "khintchine", "limsup", "sbsum", "maximal"}));
    estimate->add_option("--beta", o.beta, "beta for ibeta");
    estimate->add_option("--h", o.h, "reference function");
    estimate->add_option("--R", o.R, "threshold multiplier");
    estimate->add_option("--depth", o.depth, "dyadic depth J");
    estimate->add_option("--mc", o.mc, "draws per node");
    estimate->add_option("--seeds", o.seeds, "seeds for limsup");
    estimate->add_option("--N", o.N, "stick-breaking faces");
    estimate->add_option("--r", o.r, "phi exponent r");
    estimate->add_option("--q", o.q, "phi power q");
    estimate->add_option("--t", o.t, "time for the maximal inequality");

    auto* hstar = app.add_subcommand("hstar", "construct the comparison function h*");
    common(hstar, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return UsageError;
    }

    try {
        if (classify->parsed()) return cmd_classify(o, out);
        if (integrals->parsed()) return cmd_integrals(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (minorant->parsed()) return cmd_minorant(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (estimate->parsed()) return cmd_estimate(o, out);
        if (hstar->parsed()) return cmd_hstar(o, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const HstarConstructionError& e) {
        err << "construction failed: " << e.what() << '\n';
        return NumericalError;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return NumericalError;
    }
    return UsageError;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

} // namespace levy::cli

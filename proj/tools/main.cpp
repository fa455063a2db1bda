// rodpade: Pade-type tables, determinants, criterion reports and bound audits.
//
// Exit codes: 0 success, 1 a verification or bound failed, 2 invalid
// configuration, 3 criterion hypotheses not met (V <= 0, indeterminate, or
// |beta|_v0 <= H_v0(alpha)).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rodpade/audit.hpp>
#include <rodpade/criterion.hpp>
#include <rodpade/heights.hpp>
#include <rodpade/logpow.hpp>
#include <rodpade/mpl.hpp>
#include <rodpade/transform.hpp>

#include "report_json.hpp"

namespace
{

using namespace rodpade;
using io::json;

enum Exit { ok = 0, failed = 1, invalid = 2, hypotheses = 3 };

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    long m = 1;
    long r = 1;
    std::string alphas;
    std::string beta;
    std::string place = "inf";
    std::string n; // "k" or "a..b"
    std::size_t depth = 0;
    std::string format = "json";
    std::string out;
    bool logpow = false;
    bool products = false;
    unsigned long lcm = 0;
};

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) {
        out.push_back(item);
    }
    return out;
}

long parse_long(const std::string &s, const std::string &what)
{
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ConfigError(what + ": expected an integer, got '" + s + "'");
}

Rational parse_q(const std::string &s, const std::string &what)
{
    try {
        return parse_rational(s);
    } catch (const std::exception &e) {
        throw ConfigError(what + ": " + e.what());
    }
}

std::vector<std::size_t> n_values(const RunConfig &rc, std::size_t fallback)
{
    std::string spec = rc.n.empty() ? std::to_string(fallback) : rc.n;
    long lo = 0;
    long hi = 0;
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
        lo = parse_long(spec.substr(0, dots), "--n");
        hi = parse_long(spec.substr(dots + 2), "--n");
    } else {
        lo = hi = parse_long(spec, "--n");
    }
    if (lo < 1 || hi < lo) {
        throw ConfigError("--n: n >= 1 required (got '" + spec + "')");
    }
    std::vector<std::size_t> out;
    for (long k = lo; k <= hi; ++k) {
        out.push_back(static_cast<std::size_t>(k));
    }
    return out;
}

MplConfig mpl_config(const RunConfig &rc)
{
    MplConfig cfg;
    cfg.m = rc.m;
    cfg.r = rc.r;
    cfg.alphas.clear();
    if (rc.alphas.empty()) {
        for (long i = 1; i <= rc.m; ++i) {
            cfg.alphas.emplace_back(i);
        }
    } else {
        for (const auto &a : split(rc.alphas, ',')) {
            cfg.alphas.push_back(parse_q(a, "--alphas"));
        }
    }
    cfg.validate();
    return cfg;
}

Rational beta_of(const RunConfig &rc)
{
    if (rc.beta.empty()) {
        throw ConfigError("--beta is required");
    }
    return parse_q(rc.beta, "--beta");
}

Place place_of(const RunConfig &rc)
{
    try {
        return Place::parse(rc.place);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

/// Fills fields not given on the command line from a JSON document.
void apply_config_file(RunConfig &rc, const std::string &path, const CLI::App &sub)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const auto given = [&](const std::string &flag) { return sub.count(flag) > 0; };
    const auto text = [](const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (doc.contains("m") && !given("--m")) {
        rc.m = doc["m"].get<long>();
    }
    if (doc.contains("r") && !given("--r")) {
        rc.r = doc["r"].get<long>();
    }
    if (doc.contains("alphas") && !given("--alphas")) {
        std::string joined;
        for (const auto &a : doc["alphas"]) {
            joined += (joined.empty() ? "" : ",") + text(a);
        }
        rc.alphas = joined;
    }
    if (doc.contains("beta") && !given("--beta")) {
        rc.beta = text(doc["beta"]);
    }
    if (doc.contains("place") && !given("--place")) {
        rc.place = doc["place"].get<std::string>();
    }
    if (doc.contains("n") && !given("--n")) {
        rc.n = text(doc["n"]);
    }
    if (doc.contains("depth") && !given("--depth")) {
        rc.depth = doc["depth"].get<std::size_t>();
    }
}

struct Output {
    json doc;
    std::string csv;
};

std::string csv_poly_rows(const PadeTable &t, std::size_t n)
{
    std::string out;
    for (std::size_t ell = 0; ell < t.columns(); ++ell) {
        const auto emit = [&](const std::string &which, const Poly &p) {
            for (std::size_t k = 0; k < p.size(); ++k) {
                out += std::to_string(n) + "," + std::to_string(ell) + "," + which + "," + std::to_string(k) + ",\"" +
                       to_string(p.coeffs()[k]) + "\"\n";
            }
        };
        emit("P", t.P[ell]);
        for (std::size_t row = 0; row < t.labels.size(); ++row) {
            emit("\"Q:" + t.labels[row] + "\"", t.Q[row][ell]);
        }
    }
    return out;
}

struct Route {
    PadeTable table;
    std::vector<MomentSeq> rows;
    DiffOp rn;
    std::size_t d = 0;
};

Route build_route(const RunConfig &rc, std::size_t n)
{
    if (rc.logpow) {
        if (rc.m < 1) {
            throw ConfigError("--m >= 1 required");
        }
        const LogPowConfig cfg{static_cast<std::size_t>(rc.m), n};
        return {logpow_table(cfg), logpow_rows(cfg.m), build_Rn_log(n, cfg.m), cfg.m};
    }
    const MplConfig cfg = mpl_config(rc);
    return {pade_table(cfg, n), mpl_rows(cfg), build_Rn(n, cfg), cfg.M()};
}

json route_config(const RunConfig &rc)
{
    if (rc.logpow) {
        return {{"route", "logpow"}, {"m", rc.m}};
    }
    json c = io::config(mpl_config(rc));
    c["route"] = "mpl";
    return c;
}

int cmd_pade(const RunConfig &rc, Output &out)
{
    bool all_ok = true;
    json results = json::array();
    std::string csv = "n,ell,poly,k,coefficient\n";
    for (std::size_t n : n_values(rc, 1)) {
        const Route route = build_route(rc, n);
        const PadeTable &t = route.table;
        const std::size_t depth = rc.depth ? rc.depth : std::max<std::size_t>(40, 2 * route.d * n + route.d + 5);
        json columns = json::array();
        bool table_ok = true;
        for (std::size_t ell = 0; ell < t.columns(); ++ell) {
            const long expected = static_cast<long>(route.d * n + ell);
            const auto v = verify_pade_detail(t.cell(ell), route.rows, n, expected);
            const bool degree_exact = t.P[ell].degree().value() == expected;
            json starts = json::array();
            bool starts_ok = true;
            for (std::size_t row = 0; row < route.rows.size(); ++row) {
                const auto rem = remainder_tail(route.rows[row], t.P[ell], n, 1);
                starts_ok = starts_ok && rem.precondition_held;
                starts.push_back({{"row", t.labels[row]},
                                  {"start", rem.tail.start()},
                                  {"leading", io::rational(rem.tail.coeff_at(rem.tail.start()))}});
            }
            const bool col_ok = v.ok() && degree_exact && starts_ok;
            table_ok = table_ok && col_ok;
            columns.push_back({{"ell", ell},
                               {"degree", degree_exact},
                               {"orthogonality", v.kernel_ok},
                               {"series", v.series_ok},
                               {"remainder_starts", starts},
                               {"ok", col_ok}});
        }
        bool rodrigues = true;
        for (const auto &f : route.rows) {
            for (std::size_t k = 0; k < n && rodrigues; ++k) {
                const std::size_t need = depth + route.rn.order() + 2 * route.d * n + 2;
                const auto image = op_apply_laurent(route.rn, f.shifted(k).tail(need), depth);
                for (const auto &c : image.tail.dense(depth)) {
                    rodrigues = rodrigues && c == 0;
                }
            }
        }
        json summary;
        try {
            summary["delta"] = io::rational(constant_delta(t));
        } catch (const std::logic_error &e) {
            summary["delta"] = nullptr;
            summary["error"] = e.what();
            table_ok = false;
        }
        table_ok = table_ok && rodrigues;
        all_ok = all_ok && table_ok;
        json entry = io::table(t);
        entry["verification"] = {{"columns", columns}, {"rodrigues_depth", depth}, {"rodrigues", rodrigues},
                                 {"ok", table_ok}};
        entry["summary"] = summary;
        results.push_back(entry);
        csv += csv_poly_rows(t, n);
    }
    out.doc = {{"command", "pade"}, {"config", route_config(rc)}, {"results", results}, {"ok", all_ok}};
    out.csv = csv;
    return all_ok ? ok : failed;
}

int cmd_det(const RunConfig &rc, Output &out)
{
    bool all_ok = true;
    json results = json::array();
    std::string csv = "n,delta,theta,leading,ratio\n";
    for (std::size_t n : n_values(rc, 1)) {
        const Route route = build_route(rc, n);
        json entry = {{"n", n}};
        try {
            const auto rep = determinant_report(route.table, route.rows, route.rn);
            entry["delta"] = io::rational(rep.delta);
            entry["theta"] = io::rational(rep.theta);
            entry["leading"] = io::rational(rep.leading);
            entry["ratio"] = io::rational(rep.ratio);
            entry["ok"] = rep.ratio == 1;
            all_ok = all_ok && rep.ratio == 1;
            csv += std::to_string(n) + ",\"" + to_string(rep.delta) + "\",\"" + to_string(rep.theta) + "\",\"" +
                   to_string(rep.leading) + "\",\"" + to_string(rep.ratio) + "\"\n";
        } catch (const std::logic_error &e) {
            entry["error"] = e.what();
            entry["ok"] = false;
            all_ok = false;
        }
        results.push_back(entry);
    }
    out.doc = {{"command", "det"}, {"config", route_config(rc)}, {"results", results}, {"ok", all_ok}};
    out.csv = csv;
    return all_ok ? ok : failed;
}

int cmd_criterion(const RunConfig &rc, Output &out)
{
    const MplConfig cfg = mpl_config(rc);
    const auto rep = evaluate_criterion(cfg, beta_of(rc), place_of(rc), rc.products);
    out.doc = {{"command", "criterion"}};
    out.doc.update(io::criterion(rep));
    std::string csv = "key,value\n";
    csv += "beta,\"" + to_string(rep.beta) + "\"\nplace," + rep.place.str() + "\n";
    csv += "convergence," + std::string(rep.convergence_ok ? "true" : "false") + "\n";
    csv += "V," + io::real_str(rep.V.value) + "\nV_error," + io::real_str(rep.V.error) + "\n";
    csv += "V_positive," + std::string(rep.V.indeterminate ? "indeterminate" : (rep.V.positive() ? "true" : "false")) +
           "\n";
    for (const auto &c : rep.conclusion) {
        csv += "conclusion,\"" + c + "\"\n";
    }
    for (const auto &c : rep.product_conclusion) {
        csv += "product_conclusion,\"" + c + "\"\n";
    }
    out.csv = csv;
    return rep.hypotheses_hold() ? ok : hypotheses;
}

int cmd_audit(const RunConfig &rc, Output &out)
{
    std::string csv = "n,place,name,cell,measured,bound,slack,holds\n";
    if (rc.lcm > 0) {
        const double ratio = log_integer(lcm_upto(rc.lcm)) / static_cast<double>(rc.lcm);
        const bool within = ratio >= 0.95 && ratio <= 1.05;
        out.doc = {{"command", "audit"},
                   {"lcm", {{"n", rc.lcm}, {"log_dn_over_n", io::real(ratio)}, {"within", within}}},
                   {"ok", within}};
        out.csv = "n,log_dn_over_n,within\n" + std::to_string(rc.lcm) + "," + io::real_str(ratio) + "," +
                  (within ? "true" : "false") + "\n";
        return within ? ok : failed;
    }
    const MplConfig cfg = mpl_config(rc);
    const Place v = place_of(rc);
    std::optional<Rational> beta;
    if (!rc.beta.empty()) {
        beta = beta_of(rc);
        if (abs_v(*beta, v) <= vector_height_arg(cfg.alphas, v)) {
            throw BadBeta("|beta|_v = " + to_string(abs_v(*beta, v)) + " does not exceed H_v(alpha) = " +
                          to_string(vector_height_arg(cfg.alphas, v)));
        }
    }
    const auto ns = n_values(rc, 1);
    bool all_ok = true;
    json audits = json::array();
    for (std::size_t n : ns) {
        const auto rep = bounds_audit(cfg, n, v, beta);
        all_ok = all_ok && rep.all_hold();
        audits.push_back(io::audit(rep));
        for (const auto &c : rep.checks) {
            csv += std::to_string(n) + "," + v.str() + "," + c.name + ",\"" + c.cell + "\"," + io::real_str(c.measured) +
                   "," + io::real_str(c.bound) + "," + io::real_str(c.slack()) + "," + (c.holds ? "true" : "false") +
                   "\n";
        }
    }
    out.doc = {{"command", "audit"}, {"config", io::config(cfg)}, {"audits", audits}};
    if (beta && ns.size() >= 2) {
        const auto dec = remainder_decay(cfg, *beta, v, ns.front(), ns.back());
        all_ok = all_ok && dec.holds();
        out.doc["remainder_decay"] = io::decay(dec);
        csv += "decay," + v.str() + ",slope,," + io::real_str(dec.slope) + "," + io::real_str(dec.threshold) + "," +
               io::real_str(dec.threshold - dec.slope) + "," + (dec.holds() ? "true" : "false") + "\n";
    }
    out.doc["ok"] = all_ok;
    out.csv = csv;
    return all_ok ? ok : failed;
}

int cmd_identities(const RunConfig &rc, Output &out)
{
    const auto ns = n_values(rc, 4);
    const std::size_t n_max = ns.back();
    const bool holds = verify_En_identities(n_max);
    out.doc = {{"command", "logpow-identities"}, {"n_max", n_max}, {"ok", holds}};
    out.csv = "n_max,ok\n" + std::to_string(n_max) + "," + (holds ? "true" : "false") + "\n";
    return holds ? ok : failed;
}

void add_common(CLI::App &sub, RunConfig &rc, std::string &config_path)
{
    sub.add_option("--m", rc.m, "number of alphas (log power for the appendix route)");
    sub.add_option("--r", rc.r, "weight bound r");
    sub.add_option("--alphas", rc.alphas, "comma-separated distinct nonzero rationals");
    sub.add_option("--beta", rc.beta, "evaluation point (rational)");
    sub.add_option("--place", rc.place, "inf or p<prime>");
    sub.add_option("--n,--n-range", rc.n, "weight n, or a range a..b");
    sub.add_option("--depth", rc.depth, "moment depth for the Rodrigues check");
    sub.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--out", rc.out, "output file (default stdout)");
    sub.add_option("--config", config_path, "JSON config document");
    sub.add_flag("--appendix-logpow", rc.logpow, "use the powers-of-log family");
    sub.add_flag("--products", rc.products, "also list products of polylogarithms");
    sub.add_option("--lcm", rc.lcm, "audit (1/n) log lcm(1..n) at this n");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Pade-type approximants for multiple polylogarithms and powers of logarithms"};
    app.require_subcommand(1);
    RunConfig rc;
    std::string config_path;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"pade", "build and verify Pade-type tables"},
        {"det", "determinant Delta_n against lc(P_{n,d}) Theta_n"},
        {"criterion", "evaluate the linear independence criterion"},
        {"audit", "check the norm and remainder bounds"},
        {"logpow-identities", "verify the E_n operator identities"},
    };
    std::vector<CLI::App *> subs;
    for (const auto &[name, help] : commands) {
        subs.push_back(app.add_subcommand(name, help));
        add_common(*subs.back(), rc, config_path);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return invalid;
    }

    Output out;
    int code = ok;
    try {
        for (auto *sub : subs) {
            if (sub->parsed()) {
                rc.command = sub->get_name();
                if (!config_path.empty()) {
                    apply_config_file(rc, config_path, *sub);
                }
            }
        }
        if (rc.command == "pade") {
            code = cmd_pade(rc, out);
        } else if (rc.command == "det") {
            code = cmd_det(rc, out);
        } else if (rc.command == "criterion") {
            code = cmd_criterion(rc, out);
        } else if (rc.command == "audit") {
            code = cmd_audit(rc, out);
        } else {
            code = cmd_identities(rc, out);
        }
    } catch (const std::invalid_argument &e) {
        // ConfigError, DegenerateAlphas and BadBeta all land here.
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    } catch (const json::exception &e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    }

    const std::string text = rc.format == "csv" ? out.csv : out.doc.dump(2) + "\n";
    if (rc.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(rc.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write '" << rc.out << "'\n";
            return invalid;
        }
        file << text;
    }
    return code;
}

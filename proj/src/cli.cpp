#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lm/cli.hpp"
#include "lm/errors.hpp"
#include "lm/identities.hpp"
#include "lm/report.hpp"

namespace lm {

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& what)
{
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (trim(s.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("invalid value '" + s + "' for " + what);
}

Degree parse_degree(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos) return {parse_real(s, "--nu"), 0.0};
    return {parse_real(s.substr(0, comma), "--nu"), parse_real(s.substr(comma + 1), "--nu")};
}

// Flat key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::optional<double> env_tolerance()
{
    const char* s = std::getenv("LM_DEFAULT_TOL");
    if (!s || !*s) return std::nullopt;
    double v = parse_real(s, "LM_DEFAULT_TOL");
    if (!(v > 0.0)) throw UsageError("LM_DEFAULT_TOL must be positive");
    return v;
}

enum class Format { json, csv, text };

Format parse_format(const std::string& s)
{
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw UsageError("unknown format '" + s + "' (expected json, csv or text)");
}

std::string render(const ReportDocument& doc, Format f)
{
    switch (f) {
    case Format::json: return to_json(doc);
    case Format::csv: return to_csv(doc);
    default: return to_text(doc);
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) throw UsageError("cannot write " + path);
}

int exit_for(const std::vector<VerificationRecord>& records)
{
    bool failed = false, nonconv = false, invalid = false;
    for (const auto& r : records) {
        nonconv |= r.status == "non_converged";
        invalid |= r.status == "invalid";
        failed |= !r.pass;
    }
    if (nonconv) return exit_code::non_convergence;
    if (invalid) return exit_code::usage;
    return failed ? exit_code::failure : exit_code::pass;
}

std::map<std::string, double> parse_overrides(const std::vector<std::string>& items,
                                              const std::map<std::string, std::string>& config)
{
    std::map<std::string, double> m;
    auto add = [&](const std::string& id, const std::string& v) {
        std::string key;
        try {
            key = find_identity(trim(id)).id;
        } catch (const UnknownIdentity& e) {
            throw UsageError(std::string("tolerance override: ") + e.what());
        }
        double t = parse_real(trim(v), "tolerance override of " + key);
        if (!(t > 0.0)) throw UsageError("tolerance override of " + key + " must be positive");
        m[key] = t;
    };
    for (const auto& [k, v] : config)
        if (k.rfind("tol.", 0) == 0) add(k.substr(4), v);
    for (const auto& s : items) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--tol-override expects ID=VALUE");
        add(s.substr(0, eq), s.substr(eq + 1));
    }
    return m;
}

void print_catalog(std::ostream& out)
{
    for (const auto& s : catalog()) {
        out << s.id << "  [" << s.lhs_kind << " vs " << s.rhs_kind << ", tol " << s.default_tol << "]\n"
            << "    " << s.description << "\n"
            << "    " << s.anchor << "\n";
        if (!s.params.empty()) out << "    params: " << s.param_domain << "\n";
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical verification of Legendre-function moment identities", "lmverify"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    int parallelism = 1;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "Flat key=value file with defaults for any flag");
    app.add_option("--parallelism", parallelism, "Worker threads for suites and sweeps")->check(CLI::Range(1, 256));
    app.add_option("--seed", seed, "Seed for the extra points of the full profile");

    auto* list = app.add_subcommand("list", "Print the identity catalog");

    auto* verify_cmd = app.add_subcommand("verify", "Verify one identity at one parameter point");
    std::string id, nu_text, format_text = "json", out_path;
    std::optional<double> n_opt, x_opt, mu_opt, a_opt, b_opt, c_opt, y_opt, tol_opt;
    verify_cmd->add_option("--id", id, "Identity id (case-insensitive)")->required();
    verify_cmd->add_option("--nu", nu_text, "Degree RE or RE,IM");
    verify_cmd->add_option("--n", n_opt, "Integer degree");
    verify_cmd->add_option("--x", x_opt, "Point in (-1, 1)");
    verify_cmd->add_option("--mu", mu_opt, "Bessel order (WEBER)");
    verify_cmd->add_option("--a", a_opt, "Scale a (WEBER)");
    verify_cmd->add_option("--b", b_opt, "Scale b (WEBER, PRUD)");
    verify_cmd->add_option("--c", c_opt, "Scale c (PRUD)");
    verify_cmd->add_option("--y", y_opt, "Argument y (WATSON_IK)");
    verify_cmd->add_option("--tol", tol_opt, "Verification tolerance");
    verify_cmd->add_option("--format", format_text, "json, csv or text");
    verify_cmd->add_option("--out", out_path, "Output file (default: standard output)");

    auto* suite = app.add_subcommand("suite", "Run a verification profile");
    std::string profile_text = "quick", suite_format = "text";
    std::vector<std::string> overrides;
    suite->add_option("--profile", profile_text, "quick or full");
    suite->add_option("--out", out_path, "Output file (default: standard output)");
    suite->add_option("--format", suite_format, "json, csv or text");
    suite->add_option("--tol-override", overrides, "Per-identity tolerance ID=VALUE (repeatable)");

    auto* sweep = app.add_subcommand("sweep", "Verify one identity along a line of real degrees");
    std::string sweep_format = "text";
    double nu_start = 0.0, nu_end = 0.0;
    int steps = 0;
    std::optional<double> sweep_tol;
    sweep->add_option("--id", id, "Identity id")->required();
    sweep->add_option("--nu-start", nu_start, "First degree")->required();
    sweep->add_option("--nu-end", nu_end, "Last degree")->required();
    sweep->add_option("--steps", steps, "Number of points")->required()->check(CLI::Range(1, 100000));
    sweep->add_option("--tol", sweep_tol, "Verification tolerance");
    sweep->add_option("--format", sweep_format, "json, csv or text");
    sweep->add_option("--out", out_path, "Output file (default: standard output)");

    auto* asym = app.add_subcommand("asym", "Run an asymptotic check");
    std::string check, asym_format = "text";
    asym->add_option("--check", check, "hh, taylor, bound or cubic")
        ->required()
        ->check(CLI::IsMember({"hh", "taylor", "bound", "cubic"}));
    asym->add_option("--format", asym_format, "json or text");
    asym->add_option("--out", out_path, "Output file (default: standard output)");

    // config values become flags placed before the command line ones, so the
    // command line wins
    for (auto* sub : app.get_subcommands({}))
        for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    for (auto* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    suite->get_option("--tol-override")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    std::map<std::string, std::string> config;
    try {
        std::vector<std::string> argv = args;
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        }
        if (!config_path.empty()) {
            config = read_config(config_path);
            CLI::App* chosen = nullptr;
            size_t at = 0;
            for (size_t i = 0; i < args.size() && !chosen; ++i)
                for (auto* sub : app.get_subcommands({}))
                    if (sub->get_name() == args[i]) {
                        chosen = sub;
                        at = i + 1;
                    }
            std::vector<std::string> extra;
            for (const auto& [k, v] : config) {
                if (k.rfind("tol.", 0) == 0 || k == "config") continue;
                bool known = app.get_option_no_throw("--" + k) != nullptr;
                for (auto* sub : app.get_subcommands({})) known |= sub->get_option_no_throw("--" + k) != nullptr;
                if (!known) throw UsageError("unknown key '" + k + "' in " + config_path);
                bool applies = app.get_option_no_throw("--" + k) || (chosen && chosen->get_option_no_throw("--" + k));
                if (!applies || !chosen) continue;
                extra.push_back("--" + k);
                extra.push_back(v);
            }
            if (chosen) argv.insert(argv.begin() + static_cast<long>(at), extra.begin(), extra.end());
        }
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::pass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::pass;
    } catch (const CLI::ParseError& e) {
        err << "lmverify: " << e.what() << "\n" << app.help();
        return exit_code::usage;
    } catch (const UsageError& e) {
        err << "lmverify: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (*list) {
            print_catalog(out);
            return exit_code::pass;
        }

        if (*verify_cmd) {
            Format fmt = parse_format(format_text);
            const IdentitySpec& spec = find_identity(id);
            Params p;
            if (!nu_text.empty()) set_degree(p, parse_degree(nu_text));
            const std::pair<const char*, std::optional<double>*> named[] = {
                {"n", &n_opt}, {"x", &x_opt}, {"mu", &mu_opt}, {"a", &a_opt},
                {"b", &b_opt}, {"c", &c_opt}, {"y", &y_opt}};
            for (auto [k, v] : named)
                if (v->has_value()) p[k] = **v;
            std::set<std::string> allowed(spec.params.begin(), spec.params.end());
            for (const auto& [k, v] : p)
                if (!allowed.count(k))
                    throw UsageError("identity " + spec.id + " takes no parameter '" + k + "'");
            std::optional<double> tol = tol_opt;
            if (!tol) tol = env_tolerance();
            if (tol && !(*tol > 0.0)) throw UsageError("--tol must be positive");
            VerificationRecord r = verify(spec.id, p, tol);
            if (fmt == Format::json) {
                emit(to_json(r), out_path, out);
            } else {
                ReportDocument doc;
                doc.records.push_back(r);
                doc.meta.tolerances[r.id] = r.tol;
                doc.meta.wall_seconds = r.elapsed;
                emit(render(doc, fmt), out_path, out);
            }
            if (r.status == "invalid") err << "lmverify: " << r.diagnostic << "\n";
            return exit_for({r});
        }

        if (*suite) {
            Format fmt = parse_format(suite_format);
            Profile prof;
            if (profile_text == "quick") prof = Profile::quick;
            else if (profile_text == "full") prof = Profile::full;
            else throw UsageError("unknown profile '" + profile_text + "' (expected quick or full)");
            auto tol = parse_overrides(overrides, config);
            if (auto g = env_tolerance())
                for (const auto& s : catalog()) tol.try_emplace(s.id, *g);
            ReportDocument doc = verify_suite(prof, tol, parallelism, seed);
            emit(render(doc, fmt), out_path, out);
            return exit_for(doc.records);
        }

        if (*sweep) {
            Format fmt = parse_format(sweep_format);
            const IdentitySpec& spec = find_identity(id);
            if (std::find(spec.params.begin(), spec.params.end(), "nu") == spec.params.end())
                throw UsageError("identity " + spec.id + " has no degree to sweep");
            std::vector<SuiteItem> items;
            for (int i = 0; i < steps; ++i) {
                double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
                Params p;
                set_degree(p, Degree(nu_start + t * (nu_end - nu_start)));
                items.push_back({spec.id, p});
            }
            std::map<std::string, double> tol;
            if (sweep_tol) tol[spec.id] = *sweep_tol;
            else if (auto g = env_tolerance()) tol[spec.id] = *g;
            ReportDocument doc = verify_items(items, tol, parallelism);
            doc.meta.profile = "sweep";
            emit(render(doc, fmt), out_path, out);
            return exit_for(doc.records);
        }

        if (*asym) {
            Format fmt = parse_format(asym_format);
            if (fmt == Format::csv) throw UsageError("asym supports json and text output");
            ReportDocument doc;
            doc.meta.profile = "asym-" + check;
            doc.meta.started_at = utc_timestamp();
            doc.asymptotics = run_asymptotic_check(check);
            for (const auto& a : doc.asymptotics) doc.meta.wall_seconds += a.elapsed;
            emit(render(doc, fmt), out_path, out);
            bool ok = std::all_of(doc.asymptotics.begin(), doc.asymptotics.end(), [](const auto& a) { return a.pass; });
            return ok ? exit_code::pass : exit_code::failure;
        }
    } catch (const UsageError& e) {
        err << "lmverify: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const UnknownIdentity& e) {
        err << "lmverify: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const DomainError& e) {
        err << "lmverify: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const NonConvergenceError& e) {
        err << "lmverify: " << e.what() << "\n";
        return exit_code::non_convergence;
    } catch (const Error& e) {
        err << "lmverify: " << e.what() << "\n";
        return exit_code::failure;
    }
    return exit_code::usage;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace lm

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lm/errors.hpp"
#include "lm/report.hpp"

namespace lm {

namespace {

// JSON --------------------------------------------------------------------

std::string num(double v)
{
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

// Builds one object with keys emitted in sorted order.
class Obj {
public:
    Obj& raw(const std::string& k, std::string v)
    {
        fields_[k] = std::move(v);
        return *this;
    }
    Obj& str(const std::string& k, const std::string& v) { return raw(k, quoted(v)); }
    Obj& num(const std::string& k, double v) { return raw(k, lm::num(v)); }
    Obj& integer(const std::string& k, long long v) { return raw(k, std::to_string(v)); }
    Obj& boolean(const std::string& k, bool v) { return raw(k, v ? "true" : "false"); }
    std::string dump(int indent) const
    {
        if (fields_.empty()) return "{}";
        std::string pad(indent + 2, ' '), out = "{\n";
        bool first = true;
        for (const auto& [k, v] : fields_) {
            if (!first) out += ",\n";
            first = false;
            out += pad + quoted(k) + ": " + v;
        }
        return out + "\n" + std::string(indent, ' ') + "}";
    }

private:
    std::map<std::string, std::string> fields_;
};

std::string num_map(const std::map<std::string, double>& m, int indent)
{
    Obj o;
    for (const auto& [k, v] : m) o.num(k, v);
    return o.dump(indent);
}

std::string pair(cplx z) { return "[" + num(z.real()) + ", " + num(z.imag()) + "]"; }

std::string record_json(const VerificationRecord& r, int indent)
{
    Obj o;
    o.str("id", r.id)
        .raw("params", num_map(r.params, indent + 2))
        .raw("lhs", pair(r.lhs))
        .raw("rhs", pair(r.rhs))
        .num("abs_diff", r.abs_diff)
        .num("rel_diff", r.rel_diff)
        .num("tol", r.tol)
        .boolean("pass", r.pass)
        .integer("n_evals", r.n_evals)
        .num("elapsed", r.elapsed)
        .str("status", r.status)
        .str("diagnostic", r.diagnostic);
    return o.dump(indent);
}

std::string asym_json(const AsymptoticRecord& a, int indent)
{
    std::string pts = "[";
    for (size_t i = 0; i < a.points.size(); ++i)
        pts += (i ? ", [" : "[") + num(a.points[i].first) + ", " + num(a.points[i].second) + "]";
    pts += "]";
    Obj o;
    o.str("kind", "asymptotics")
        .str("check", a.check)
        .str("name", a.name)
        .num("value", a.value)
        .num("expected_lo", a.expected_lo)
        .num("expected_hi", a.expected_hi)
        .boolean("pass", a.pass)
        .raw("points", pts)
        .num("elapsed", a.elapsed);
    return o.dump(indent);
}

template <class T, class F>
std::string array(const std::vector<T>& v, int indent, F&& item)
{
    if (v.empty()) return "[]";
    std::string pad(indent + 2, ' '), out = "[\n";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad + item(v[i], indent + 2);
    }
    return out + "\n" + std::string(indent, ' ') + "]";
}

double json_num(const nlohmann::json& j)
{
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

cplx json_cplx(const nlohmann::json& j) { return {json_num(j.at(0)), json_num(j.at(1))}; }

// CSV / text ----------------------------------------------------------------

std::string cplx_field(cplx z) { return num(z.real()) + ";" + num(z.imag()); }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string short_num(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Grids ----------------------------------------------------------------------

Params nu_param(double re, double im = 0.0)
{
    Params p;
    set_degree(p, Degree(re, im));
    return p;
}

Params with(Params p, const std::string& k, double v)
{
    p[k] = v;
    return p;
}

} // namespace

std::string utc_timestamp()
{
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<SuiteItem> suite_grid(Profile profile, std::uint64_t seed)
{
    std::vector<SuiteItem> g;
    auto add = [&](const std::string& id, Params p = {}) { g.push_back({id, std::move(p)}); };
    const char* specials[] = {"SC_Z3_6", "SC_Z3_4", "SC_Z3_3", "SC_Z5", "SC_LOG3", "SC_LOG2", "SC_LOG23", "SC_Z3H"};
    const char* bessel[] = {"JY3", "J3Y", "J4_3J2Y2", "J4_6J2Y2_Y4", "J2Y2_COS", "K04", "IK_EXP"};
    for (const char* id : specials) add(id);
    for (const char* id : bessel) add(id);

    if (profile == Profile::quick) {
        add("A", nu_param(-0.25));
        add("A", nu_param(1.3, 0.7));
        add("B", nu_param(-0.25));
        add("B", nu_param(0.8, 0.4));
        add("P3P", nu_param(0.3));
        add("PQQQ0", {{"n", 2}});
        add("TRICOMI_PP", with(nu_param(0.3), "x", 0.3));
        add("TRICOMI_XPP", with(nu_param(0.3), "x", -0.7));
        add("PP_INT", nu_param(0.25));
        add("PQ_T", {{"n", 2}, {"x", 0.3}});
        add("XPQ_T", {{"n", 1}, {"x", -0.2}});
        add("NEUMANN", {{"n", 3}, {"x", -0.6}});
        add("PNQN0", {{"n", 3}});
        add("IIKK", {{"nu", 1.0}});
        add("WATSON_IK", {{"nu", 0.5}, {"y", 1.0}});
        add("WEBER", {{"mu", 1.5}, {"a", 2}, {"b", 1}});
        add("PRUD", {{"nu", 0.5}, {"b", 1}, {"c", 2}});
        add("SIN2COT", nu_param(0.3));
        return g;
    }

    for (double nu : {-1.0 / 6.0, -0.25, -1.0 / 3.0, 0.37, 2.6}) {
        add("A", nu_param(nu));
        add("B", nu_param(nu));
    }
    add("A", nu_param(1.3, 0.7));
    add("B", nu_param(0.8, 0.4));
    for (auto [re, im] : {std::pair{0.3, 0.0}, {-0.25, 0.0}, {1.7, 0.0}, {2.25, 0.0}, {0.6, 0.3}})
        add("P3P", nu_param(re, im));
    for (auto [re, im] : {std::pair{0.25, 0.0}, {1.3, 0.0}, {-0.8, 0.0}, {0.4, 0.5}}) add("PP_INT", nu_param(re, im));
    for (double nu : {0.3, -0.25})
        for (double x : {-0.7, 0.3, 0.8}) {
            add("TRICOMI_PP", with(nu_param(nu), "x", x));
            add("TRICOMI_XPP", with(nu_param(nu), "x", x));
        }
    for (int n = 0; n <= 4; ++n) {
        add("PQQQ0", {{"n", n}});
        add("PNQN0", {{"n", n}});
        for (double x : {-0.7, 0.3}) {
            add("PQ_T", {{"n", n}, {"x", x}});
            add("XPQ_T", {{"n", n}, {"x", x}});
            add("NEUMANN", {{"n", n}, {"x", x}});
        }
    }
    for (double nu : {0.25, 1.0, 2.5}) add("IIKK", {{"nu", nu}});
    add("WEBER", {{"mu", 1.5}, {"a", 2}, {"b", 1}});
    add("WEBER", {{"mu", 1.5}, {"a", 1}, {"b", 2}});
    add("PRUD", {{"nu", 0.5}, {"b", 1}, {"c", 2}});
    add("PRUD", {{"nu", 0.5}, {"b", 2}, {"c", 1}});
    add("WATSON_IK", {{"nu", 0.5}, {"y", 1.0}});
    add("WATSON_IK", {{"nu", 1.0}, {"y", 2.0}});
    add("SIN2COT", nu_param(0.3));
    add("SIN2COT", nu_param(1.2));

    // a few seed-dependent points on top of the fixed grids
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> deg(-0.45, 3.0), pt(-0.9, 0.9);
    auto round6 = [](double v) { return std::round(v * 1e6) / 1e6; };
    add("A", nu_param(round6(deg(rng))));
    add("B", nu_param(round6(deg(rng))));
    add("P3P", nu_param(round6(deg(rng))));
    add("TRICOMI_PP", with(nu_param(round6(deg(rng))), "x", round6(pt(rng))));
    return g;
}

void sort_records(std::vector<VerificationRecord>& records)
{
    std::stable_sort(records.begin(), records.end(), [](const VerificationRecord& a, const VerificationRecord& b) {
        if (a.id != b.id) return a.id < b.id;
        return format_params(a.params) < format_params(b.params);
    });
}

ReportDocument verify_items(const std::vector<SuiteItem>& items, const std::map<std::string, double>& tol_overrides,
                            int parallelism)
{
    if (parallelism < 1) throw DomainError("parallelism must be at least 1");
    for (const auto& [id, t] : tol_overrides) {
        find_identity(id);
        if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("tolerance override for " + id + " must be positive");
    }
    auto tol_for = [&](const std::string& id) -> std::optional<double> {
        if (auto it = tol_overrides.find(id); it != tol_overrides.end()) return it->second;
        return std::nullopt;
    };

    ReportDocument doc;
    doc.meta.started_at = utc_timestamp();
    auto t0 = std::chrono::steady_clock::now();
    std::vector<VerificationRecord> out(items.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < items.size();) out[i] = verify(items[i].id, items[i].params, tol_for(items[i].id));
    };
    std::vector<std::future<void>> pool;
    int workers = std::min<int>(parallelism, static_cast<int>(std::max<size_t>(items.size(), 1)));
    for (int w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : pool) f.get();

    doc.records = std::move(out);
    sort_records(doc.records);
    for (const auto& r : doc.records) doc.meta.tolerances[r.id] = r.tol;
    doc.meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return doc;
}

ReportDocument verify_suite(Profile profile, const std::map<std::string, double>& tol_overrides, int parallelism,
                            std::uint64_t seed)
{
    ReportDocument doc = verify_items(suite_grid(profile, seed), tol_overrides, parallelism);
    doc.meta.profile = profile == Profile::quick ? "quick" : "full";
    doc.meta.seed = seed;
    return doc;
}

std::string to_json(const VerificationRecord& r) { return record_json(r, 0) + "\n"; }

std::string to_json(const ReportDocument& doc)
{
    Obj meta;
    meta.str("version", doc.meta.version)
        .str("profile", doc.meta.profile)
        .raw("tolerances", num_map(doc.meta.tolerances, 4))
        .str("started_at", doc.meta.started_at)
        .num("wall_seconds", doc.meta.wall_seconds)
        .integer("seed", static_cast<long long>(doc.meta.seed));
    Obj top;
    top.raw("meta", meta.dump(2))
        .raw("records", array(doc.records, 2, record_json))
        .raw("asymptotics", array(doc.asymptotics, 2, asym_json));
    return top.dump(0) + "\n";
}

ReportDocument report_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
    ReportDocument doc;
    try {
        const auto& m = j.at("meta");
        doc.meta.version = m.at("version").get<std::string>();
        doc.meta.profile = m.at("profile").get<std::string>();
        for (const auto& [k, v] : m.at("tolerances").items()) doc.meta.tolerances[k] = json_num(v);
        doc.meta.started_at = m.at("started_at").get<std::string>();
        doc.meta.wall_seconds = json_num(m.at("wall_seconds"));
        doc.meta.seed = m.value("seed", std::uint64_t{0});
        for (const auto& jr : j.at("records")) {
            VerificationRecord r;
            r.id = jr.at("id").get<std::string>();
            for (const auto& [k, v] : jr.at("params").items()) r.params[k] = json_num(v);
            r.lhs = json_cplx(jr.at("lhs"));
            r.rhs = json_cplx(jr.at("rhs"));
            r.abs_diff = json_num(jr.at("abs_diff"));
            r.rel_diff = json_num(jr.at("rel_diff"));
            r.tol = json_num(jr.at("tol"));
            r.pass = jr.at("pass").get<bool>();
            r.n_evals = jr.at("n_evals").get<long>();
            r.elapsed = json_num(jr.at("elapsed"));
            r.status = jr.value("status", std::string("ok"));
            r.diagnostic = jr.value("diagnostic", std::string());
            doc.records.push_back(std::move(r));
        }
        if (j.contains("asymptotics"))
            for (const auto& ja : j.at("asymptotics")) {
                AsymptoticRecord a;
                a.check = ja.at("check").get<std::string>();
                a.name = ja.at("name").get<std::string>();
                a.value = json_num(ja.at("value"));
                a.expected_lo = ja.at("expected_lo").is_null() ? -std::numeric_limits<double>::infinity()
                                                               : ja.at("expected_lo").get<double>();
                a.expected_hi = ja.at("expected_hi").is_null() ? std::numeric_limits<double>::infinity()
                                                               : ja.at("expected_hi").get<double>();
                a.pass = ja.at("pass").get<bool>();
                for (const auto& p : ja.at("points")) a.points.emplace_back(json_num(p.at(0)), json_num(p.at(1)));
                a.elapsed = json_num(ja.at("elapsed"));
                doc.asymptotics.push_back(std::move(a));
            }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
    return doc;
}

std::string to_csv(const ReportDocument& doc)
{
    std::string out = std::string(csv_header) + "\n";
    for (const auto& r : doc.records) {
        out += csv_escape(r.id) + "," + csv_escape(format_params(r.params)) + "," + cplx_field(r.lhs) + "," +
               cplx_field(r.rhs) + "," + num(r.abs_diff) + "," + num(r.rel_diff) + "," + num(r.tol) + "," +
               (r.pass ? "true" : "false") + "," + std::to_string(r.n_evals) + "," + num(r.elapsed) + "\n";
    }
    return out;
}

std::string to_text(const ReportDocument& doc)
{
    std::ostringstream os;
    char line[256];
    if (!doc.records.empty()) {
        std::snprintf(line, sizeof line, "%-12s %-28s %-10s %-10s %-14s %s\n", "id", "params", "abs_diff", "tol",
                      "status", "seconds");
        os << line;
        int passed = 0;
        for (const auto& r : doc.records) {
            std::string p = format_params(r.params);
            if (p.size() > 28) p = p.substr(0, 25) + "...";
            std::snprintf(line, sizeof line, "%-12s %-28s %-10s %-10s %-14s %.3f\n", r.id.c_str(), p.c_str(),
                          short_num(r.abs_diff).c_str(), short_num(r.tol).c_str(),
                          (r.pass ? "PASS" : "FAIL " + r.status).c_str(), r.elapsed);
            os << line;
            passed += r.pass;
        }
        os << passed << "/" << doc.records.size() << " passed";
        if (!doc.meta.profile.empty()) os << " (profile " << doc.meta.profile << ")";
        std::snprintf(line, sizeof line, " in %.2f s\n", doc.meta.wall_seconds);
        os << line;
    }
    for (const auto& a : doc.asymptotics) {
        std::snprintf(line, sizeof line, "%-7s %-26s %-14.8g [%s, %s]  %s\n", a.check.c_str(), a.name.c_str(), a.value,
                      short_num(a.expected_lo).c_str(), short_num(a.expected_hi).c_str(), a.pass ? "PASS" : "FAIL");
        os << line;
    }
    return os.str();
}

} // namespace lm

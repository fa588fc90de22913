#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "lm/asymptotics.hpp"
#include "lm/identities.hpp"

namespace lm {

struct ReportMeta {
    std::string version = "0.1.0";
    std::string profile;
    std::map<std::string, double> tolerances; // id -> tolerance in effect
    std::string started_at;                   // ISO 8601, UTC
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct ReportDocument {
    ReportMeta meta;
    std::vector<VerificationRecord> records;
    std::vector<AsymptoticRecord> asymptotics;
};

enum class Profile { quick, full };

struct SuiteItem {
    std::string id;
    Params params;
};

// The parameter grid of a profile. The full profile adds seed-dependent
// points to the fixed grids.
std::vector<SuiteItem> suite_grid(Profile profile, std::uint64_t seed = 0);

ReportDocument verify_suite(Profile profile, const std::map<std::string, double>& tol_overrides = {},
                            int parallelism = 1, std::uint64_t seed = 0);
ReportDocument verify_items(const std::vector<SuiteItem>& items,
                            const std::map<std::string, double>& tol_overrides, int parallelism);

// Sorted by id, then by formatted params.
void sort_records(std::vector<VerificationRecord>& records);

std::string to_json(const ReportDocument& doc);
std::string to_json(const VerificationRecord& r);
std::string to_csv(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);
ReportDocument report_from_json(const std::string& text);

inline constexpr const char* csv_header = "id,params,lhs,rhs,abs_diff,rel_diff,tol,pass,n_evals,elapsed";

std::string utc_timestamp();

} // namespace lm

#pragma once

#include <string>

#include "json.hpp"

#include "gamma1lab/density.hpp"

// Serialization: JSON reports with a provenance block, and the scan CSV
// with a fixed column set.  All reals print with 17 significant digits
// ('.' decimal, no separators) so binary64 values round-trip exactly.

namespace g1lab::report {

using json = nlohmann::json;

std::string fmt17(double x);

// Every DensityReport field, names matching the struct members.
json density_to_json(const density::DensityReport& r);

// config echo + build id + wall time; deterministic runs pin the wall
// time to 0 so reruns are byte-identical.
json provenance(const json& effective_config, double wall_seconds,
                bool deterministic);

constexpr const char* kScanHeader =
    "q,k,delta,testfn,d_total,main_term,p_term,p2_term,s1,s2,m_off,eps_off,"
    "tail_bound_total,certified";

std::string scan_csv_row(const density::DensityReport& r);

// A scan row for a q whose pipeline threw: numeric fields nan,
// certified=false.
std::string scan_failure_row(std::uint64_t q, std::uint32_t k, double delta,
                             const std::string& testfn_id);

// path empty -> stdout; otherwise write (truncate) the file.
void write_output(const std::string& path, const std::string& content);

}  // namespace g1lab::report

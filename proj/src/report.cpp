#include <cstdio>
#include <fstream>
#include <iostream>

#include "gamma1lab/report.hpp"

#ifndef G1LAB_BUILD_ID
#define G1LAB_BUILD_ID "unknown"
#endif

namespace g1lab::report {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json density_to_json(const density::DensityReport& r) {
    json j;
    j["q"] = r.q;
    j["k"] = r.k;
    j["delta"] = r.delta;
    j["testfn"] = r.testfn;
    j["main_term"] = r.main_term;
    j["family_size_correction_bound"] = r.family_size_correction_bound;
    j["s_n"] = r.s_n;
    j["p_term"] = r.p_term;
    j["p2_term"] = r.p2_term;
    j["p2_chi_budget"] = r.p2_chi_budget;
    j["higher_power_budget"] = r.higher_power_budget;
    j["eps_higher_power"] = r.eps_higher_power;
    j["s1"] = r.s1;
    j["s2"] = r.s2;
    j["m_off"] = r.m_off;
    j["eps_off"] = r.eps_off;
    j["d_total"] = r.d_total;
    j["tail_s_n"] = r.tail_s_n;
    j["tail_m_off"] = r.tail_m_off;
    j["tail_eps_off"] = r.tail_eps_off;
    j["tail_s1"] = r.tail_s1;
    j["tail_s2"] = r.tail_s2;
    j["tail_p2"] = r.tail_p2;
    j["tail_eps_hp"] = r.tail_eps_hp;
    j["tail_bound_total"] = r.tail_bound_total;
    j["certified"] = r.certified;
    j["q_is_prime"] = r.q_is_prime;
    j["delta_warning"] = r.delta_warning;
    j["archimedean_remainder_unresolved"] = r.archimedean_remainder_unresolved;
    j["lattice_u"] = r.lattice_u;
    j["terms_used"] = r.terms_used;
    return j;
}

json provenance(const json& effective_config, double wall_seconds,
                bool deterministic) {
    json j;
    j["config"] = effective_config;
    j["build_id"] = G1LAB_BUILD_ID;
    j["wall_time_seconds"] = deterministic ? 0.0 : wall_seconds;
    return j;
}

std::string scan_csv_row(const density::DensityReport& r) {
    std::string row = std::to_string(r.q);
    row += ',' + std::to_string(r.k);
    row += ',' + fmt17(r.delta);
    row += ',' + r.testfn;
    for (double v : {r.d_total, r.main_term, r.p_term, r.p2_term, r.s1, r.s2,
                     r.m_off, r.eps_off, r.tail_bound_total})
        row += ',' + fmt17(v);
    row += r.certified ? ",true" : ",false";
    return row;
}

std::string scan_failure_row(std::uint64_t q, std::uint32_t k, double delta,
                             const std::string& testfn_id) {
    std::string row = std::to_string(q);
    row += ',' + std::to_string(k);
    row += ',' + fmt17(delta);
    row += ',' + testfn_id;
    for (int i = 0; i < 9; ++i) row += ",nan";
    row += ",false";
    return row;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw OutOfRange("cannot open output path: " + path);
    f << content;
}

}  // namespace g1lab::report

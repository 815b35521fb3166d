#pragma once

#include <cstdint>
#include <string>

#include "schro/mesh.hpp"

namespace schro {

/// Shortest exact decimal for a double ("%.17g"); locale independent.
std::string format_full(double x);

/// CSV with header "r,value", one row per node, full precision.
std::string profile_csv(const Profile& p);
void write_profile_csv(const std::string& path, const Profile& p);

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest, used to fingerprint emitted artifacts in runs.log.
std::uint64_t fnv1a(const std::string& bytes);

/// Appends one JSON line {command, parameters, wall_time_s, digest} to
/// runs.log in the current directory.
void append_run_log(const std::string& command, const std::string& params_json,
                    double wall_time_s, std::uint64_t digest);

}  // namespace schro

#include "schro/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace schro {

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string profile_csv(const Profile& p) {
  std::string out = "r,value\n";
  for (Eigen::Index i = 0; i < p.grid->size(); ++i) {
    out += format_full(p.grid->node(i));
    out += ',';
    out += format_full(p.values[i]);
    out += '\n';
  }
  return out;
}

void write_profile_csv(const std::string& path, const Profile& p) {
  write_text_file(path, profile_csv(p));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void append_run_log(const std::string& command, const std::string& params_json,
                    double wall_time_s, std::uint64_t digest) {
  std::ofstream f("runs.log", std::ios::app);
  if (!f) return;  // logging must not fail the run
  char dig[20];
  std::snprintf(dig, sizeof(dig), "%016" PRIx64, digest);
  f << "{\"command\":\"" << command << "\",\"parameters\":" << params_json
    << ",\"wall_time_s\":" << format_full(wall_time_s) << ",\"digest\":\""
    << dig << "\"}\n";
}

}  // namespace schro

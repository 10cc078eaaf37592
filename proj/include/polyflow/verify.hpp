#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polyflow::verify {

struct CheckRow {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string value;  // headline number(s), 12 significant digits
};

// Suites in canonical execution order.
std::vector<std::string> suite_names();

std::vector<CheckRow> run_suite(const std::string& suite, std::uint64_t seed);
std::vector<CheckRow> run_all(std::uint64_t seed);

// Deterministic serialization: identical seed gives byte-identical output.
std::string render_table_json(const std::vector<CheckRow>& rows, std::uint64_t seed);

}  // namespace polyflow::verify

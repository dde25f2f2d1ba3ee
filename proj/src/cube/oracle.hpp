#ifndef CUBECK_CUBE_ORACLE_HPP
#define CUBECK_CUBE_ORACLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

// Oracle suites: each check produces one record. The CLI renders records as
// text or JSON; any failure makes the whole run fail.

namespace ctt::cube {

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string instance; // size / parameters
  bool pass = false;
  std::string witness; // failure detail
};

struct OracleOptions {
  int dim = 3;
  int depth = 3;
};

std::vector<CheckRecord> run_suite(const std::string& suite,
                                   const OracleOptions& opt);
std::vector<std::string> suite_names();

void print_records(std::ostream& os, const std::vector<CheckRecord>& recs,
                   bool json);

} // namespace ctt::cube

#endif

//  Copyright 2026 The fixtrans Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

// Command-line front end: runs one scenario file or a directory of them.
//
// Exits 0 only when every check passes. Bad input exits 2.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "fixtrans/scenario.hpp"

int main(int argc, char** argv) {
  namespace sc = fixtrans::scenario;
  CLI::App app{"Run fixed-point transparency scenarios and report the checks as JSON."};
  std::string path;
  std::string format = "json";
  sc::Options opts;
  std::uint64_t seed = 0;
  std::size_t fuel = 0;
  std::size_t bound = 0;
  app.add_option("path", path, "Scenario file, or a directory of *.json scenarios")->required();
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized checks (overrides the scenario)");
  auto* fuel_opt = app.add_option("--fuel", fuel, "Iteration budget for fixed-point loops")->check(CLI::PositiveNumber);
  auto* bound_opt = app.add_option("--bound", bound, "Universe size up to which checks are exhaustive");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--raw-relation", opts.raw_relation, "Accept modal frames that are not irreflexive and transitive");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*seed_opt) opts.seed = seed;
  if (*fuel_opt) opts.fuel = fuel;
  if (*bound_opt) opts.bound = bound;

  try {
    if (std::filesystem::is_directory(path)) {
      const auto s = sc::run_suite(path, opts);
      if (format == "text") {
        std::cout << sc::render_text(s);
      } else {
        std::cout << s.to_json().dump(2) << "\n";
      }
      for (const auto& [f, m] : s.input_errors) std::cerr << "error: " << m << "\n";
      return s.exit_code();
    }
    const auto r = sc::run_scenario(path, opts);
    if (format == "text") {
      std::cout << sc::render_text(r);
    } else {
      std::cout << r.to_json().dump(2) << "\n";
    }
    return r.exit_code();
  } catch (const sc::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

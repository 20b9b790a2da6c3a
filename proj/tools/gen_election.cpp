// Copyright 2026 The PPGA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic generator of synthetic participatory-budgeting elections in
// the semicolon-separated META/PROJECTS/VOTES format. Project popularity is
// Zipf-skewed and approval-set sizes follow a short truncated-geometric tail,
// which mirrors the shape of real municipal elections.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppga/rng.hpp"

namespace {

constexpr std::uint64_t kCostStream = 1;
constexpr std::uint64_t kPermStream = 2;
constexpr std::uint64_t kSizeStream = 3;
constexpr std::uint64_t kPickStream = 4;

const char* kCategories[] = {"parks",     "roads",   "education",
                             "culture",   "sport",   "environment",
                             "transport", "health"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic election file"};
  int voters = 12000;
  int projects = 24;
  long long budget = 3000000;
  std::uint64_t seed = 1;
  double min_cost_frac = 0.02;
  double max_cost_frac = 0.60;
  double more_votes = 0.45;  // chance of extending the approval set
  int max_votes = 6;
  double zipf = 0.8;
  std::string out_path = "election.pb";
  std::string city = "Testville";
  app.add_option("--voters", voters)->check(CLI::PositiveNumber);
  app.add_option("--projects", projects)->check(CLI::PositiveNumber);
  app.add_option("--budget", budget)->check(CLI::PositiveNumber);
  app.add_option("--seed", seed);
  app.add_option("--min-cost-frac", min_cost_frac);
  app.add_option("--max-cost-frac", max_cost_frac);
  app.add_option("--more-votes", more_votes, "geometric continue probability");
  app.add_option("--max-votes", max_votes);
  app.add_option("--zipf", zipf, "popularity skew exponent");
  app.add_option("--city", city);
  app.add_option("--out", out_path);
  CLI11_PARSE(app, argc, argv);

  // Costs between the two budget fractions, log-uniform.
  std::vector<long long> costs(projects);
  for (int j = 0; j < projects; ++j) {
    const double u = ppga::counter_uniform(seed, kCostStream, j, 0);
    const double fraction =
        min_cost_frac * std::pow(max_cost_frac / min_cost_frac, u);
    costs[j] = std::max<long long>(1, std::llround(fraction * budget));
  }

  // Popularity ranks: project order shuffled, then Zipf weights by rank.
  std::vector<int> rank(projects);
  for (int j = 0; j < projects; ++j) rank[j] = j;
  for (int j = 0; j < projects - 1; ++j) {
    const int pick =
        j + static_cast<int>(ppga::counter_below(seed, kPermStream, j,
                                                 projects - j));
    std::swap(rank[j], rank[pick]);
  }
  std::vector<double> cdf(projects);
  double total = 0.0;
  std::vector<double> weight(projects);
  for (int j = 0; j < projects; ++j) {
    weight[rank[j]] = 1.0 / std::pow(j + 1.0, zipf);
  }
  for (int j = 0; j < projects; ++j) {
    total += weight[j];
    cdf[j] = total;
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << "META\nkey;value\n";
  out << "description;Synthetic PB election (" << city << ")\n";
  out << "country;Synthetica\n";
  out << "unit;" << city << "\n";
  out << "instance;2026\n";
  out << "num_projects;" << projects << "\n";
  out << "num_votes;" << voters << "\n";
  out << "budget;" << budget << "\n";
  out << "vote_type;approval\n";
  out << "rule;greedy\n";

  out << "PROJECTS\nproject_id;cost;name;category\n";
  for (int j = 0; j < projects; ++j) {
    out << (j + 1) << ';' << costs[j] << ";Project " << (j + 1) << ';'
        << kCategories[j % 8] << "\n";
  }

  out << "VOTES\nvoter_id;vote;age\n";
  std::vector<int> chosen;
  for (int i = 0; i < voters; ++i) {
    // 1..max_votes approvals, truncated-geometric tail.
    int count = 1;
    while (count < max_votes &&
           ppga::counter_uniform(seed, kSizeStream, i, count) < more_votes) {
      ++count;
    }
    count = std::min(count, projects);
    chosen.clear();
    std::uint64_t attempt = 0;
    while (static_cast<int>(chosen.size()) < count && attempt < 200) {
      const double u =
          ppga::counter_uniform(seed, kPickStream,
                                static_cast<std::uint64_t>(i) * 256 + attempt, 0) *
          total;
      ++attempt;
      const int j = static_cast<int>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      if (std::find(chosen.begin(), chosen.end(), j) == chosen.end()) {
        chosen.push_back(j);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    out << (i + 1) << ';';
    for (size_t a = 0; a < chosen.size(); ++a) {
      if (a > 0) out << ',';
      out << (chosen[a] + 1);
    }
    const int age =
        18 + static_cast<int>(ppga::counter_below(seed, kSizeStream,
                                                  0x100000ULL + i, 70));
    out << ';' << age << "\n";
  }
  std::cout << "wrote " << out_path << " (" << voters << " voters, "
            << projects << " projects)\n";
  return 0;
}

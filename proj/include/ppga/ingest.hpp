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

#ifndef PPGA_INGEST_HPP_
#define PPGA_INGEST_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppga/errors.hpp"
#include "ppga/model.hpp"
#include "ppga/rng.hpp"

namespace ppga {

// A participatory-budgeting election file (semicolon-separated META /
// PROJECTS / VOTES sections) parsed losslessly: extra columns are preserved
// in file order.
struct RawElection {
  std::vector<std::pair<std::string, std::string>> meta;  // file order
  double budget = 0.0;

  std::vector<std::string> project_columns;  // after project_id, minus none
  struct Project {
    std::string id;
    double cost = 0.0;
    std::vector<std::string> fields;  // aligned with project_columns

    bool operator==(const Project&) const = default;
  };
  std::vector<Project> projects;

  std::vector<std::string> vote_columns;  // after voter_id, minus "vote"
  struct Vote {
    std::string voter_id;
    std::vector<std::string> approved;  // known project ids, listed order
    std::vector<std::string> fields;    // aligned with vote_columns

    bool operator==(const Vote&) const = default;
  };
  std::vector<Vote> votes;

  int dropped_vote_refs = 0;   // unknown project ids removed from votes
  int count_mismatches = 0;    // META num_projects / num_votes disagreements

  bool operator==(const RawElection& other) const {
    return meta == other.meta && budget == other.budget &&
           project_columns == other.project_columns &&
           projects == other.projects && vote_columns == other.vote_columns &&
           votes == other.votes;
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Accepts "1234", "1234.5", and the decimal-comma form "1234,5".
inline bool parse_number(std::string text, double& out) {
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    if (text.find(',', comma + 1) != std::string::npos) return false;
    text[comma] = '.';
  }
  try {
    size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (...) {
    return false;
  }
}

}  // namespace detail

inline RawElection parse_pabulib(const std::string& text) {
  RawElection election;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;

  enum class Section { kNone, kMeta, kProjects, kVotes };
  Section section = Section::kNone;
  bool saw_meta = false, saw_projects = false, saw_votes = false;
  bool need_header = false;
  std::vector<std::string> header;
  int vote_column_index = -1;
  int cost_column_index = -1;
  std::unordered_map<std::string, int> project_ids;

  auto strip = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };

  while (std::getline(stream, line)) {
    ++line_no;
    strip(line);
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;

    if (line == "META") {
      section = Section::kMeta;
      saw_meta = true;
      need_header = true;  // "key;value" header row
      continue;
    }
    if (line == "PROJECTS") {
      section = Section::kProjects;
      saw_projects = true;
      need_header = true;
      continue;
    }
    if (line == "VOTES") {
      section = Section::kVotes;
      saw_votes = true;
      need_header = true;
      continue;
    }

    std::vector<std::string> fields = detail::split(line, ';');
    switch (section) {
      case Section::kNone:
        throw ParseError("content before any section header", line_no);
      case Section::kMeta: {
        if (need_header) {
          need_header = false;
          if (fields.size() >= 2 && fields[0] == "key" && fields[1] == "value")
            continue;
          // Fall through: files may omit the key;value header row.
        }
        if (fields.size() < 2) {
          throw ParseError("META row needs key;value", line_no);
        }
        election.meta.emplace_back(fields[0], fields[1]);
        break;
      }
      case Section::kProjects: {
        if (need_header) {
          need_header = false;
          if (fields.empty() || fields[0] != "project_id") {
            throw ParseError("PROJECTS header must begin with project_id",
                             line_no);
          }
          header.assign(fields.begin() + 1, fields.end());
          election.project_columns = header;
          cost_column_index = -1;
          for (size_t c = 0; c < header.size(); ++c) {
            if (header[c] == "cost") cost_column_index = static_cast<int>(c);
          }
          if (cost_column_index < 0) {
            throw ParseError("PROJECTS header has no cost column", line_no);
          }
          continue;
        }
        if (fields.size() != election.project_columns.size() + 1) {
          throw ParseError("PROJECTS row has wrong column count", line_no);
        }
        RawElection::Project project;
        project.id = fields[0];
        project.fields.assign(fields.begin() + 1, fields.end());
        if (!detail::parse_number(project.fields[cost_column_index],
                                  project.cost)) {
          throw ParseError("non-numeric cost for project " + project.id,
                           line_no);
        }
        if (project_ids.count(project.id)) {
          throw ParseError("duplicate project id " + project.id, line_no);
        }
        project_ids[project.id] = static_cast<int>(election.projects.size());
        election.projects.push_back(std::move(project));
        break;
      }
      case Section::kVotes: {
        if (need_header) {
          need_header = false;
          if (fields.empty() || fields[0] != "voter_id") {
            throw ParseError("VOTES header must begin with voter_id", line_no);
          }
          header.assign(fields.begin() + 1, fields.end());
          vote_column_index = -1;
          election.vote_columns.clear();
          for (size_t c = 0; c < header.size(); ++c) {
            if (header[c] == "vote") {
              vote_column_index = static_cast<int>(c);
            } else {
              election.vote_columns.push_back(header[c]);
            }
          }
          if (vote_column_index < 0) {
            throw ParseError("VOTES header has no vote column", line_no);
          }
          continue;
        }
        if (fields.size() != header.size() + 1) {
          throw ParseError("VOTES row has wrong column count", line_no);
        }
        RawElection::Vote vote;
        vote.voter_id = fields[0];
        for (size_t c = 0; c < header.size(); ++c) {
          const std::string& value = fields[c + 1];
          if (static_cast<int>(c) == vote_column_index) {
            if (!value.empty()) {
              for (std::string& id : detail::split(value, ',')) {
                if (project_ids.count(id)) {
                  vote.approved.push_back(std::move(id));
                } else {
                  ++election.dropped_vote_refs;
                }
              }
            }
          } else {
            vote.fields.push_back(value);
          }
        }
        election.votes.push_back(std::move(vote));
        break;
      }
    }
  }

  if (!saw_meta) throw ParseError("missing META section", 0);
  if (!saw_projects) throw ParseError("missing PROJECTS section", 0);
  if (!saw_votes) throw ParseError("missing VOTES section", 0);

  bool have_budget = false;
  for (const auto& [key, value] : election.meta) {
    if (key == "budget") {
      if (!detail::parse_number(value, election.budget) ||
          !(election.budget > 0.0)) {
        throw ParseError("budget must be a positive number", 0);
      }
      have_budget = true;
    } else if (key == "num_projects") {
      double expected = 0.0;
      if (detail::parse_number(value, expected) &&
          expected != static_cast<double>(election.projects.size())) {
        ++election.count_mismatches;
      }
    } else if (key == "num_votes") {
      double expected = 0.0;
      if (detail::parse_number(value, expected) &&
          expected != static_cast<double>(election.votes.size())) {
        ++election.count_mismatches;
      }
    }
  }
  if (!have_budget) throw ParseError("META is missing the budget key", 0);
  return election;
}

// Debug writer; parse(write_pabulib(e)) == e.
inline std::string write_pabulib(const RawElection& election) {
  std::ostringstream out;
  out << "META\nkey;value\n";
  for (const auto& [key, value] : election.meta) {
    out << key << ';' << value << '\n';
  }
  out << "PROJECTS\nproject_id";
  for (const auto& column : election.project_columns) out << ';' << column;
  out << '\n';
  for (const auto& project : election.projects) {
    out << project.id;
    for (const auto& field : project.fields) out << ';' << field;
    out << '\n';
  }
  out << "VOTES\nvoter_id;vote";
  for (const auto& column : election.vote_columns) out << ';' << column;
  out << '\n';
  for (const auto& vote : election.votes) {
    out << vote.voter_id << ';';
    for (size_t a = 0; a < vote.approved.size(); ++a) {
      if (a > 0) out << ',';
      out << vote.approved[a];
    }
    for (const auto& field : vote.fields) out << ';' << field;
    out << '\n';
  }
  return out.str();
}

// Binary cost-utilities: u_ij = 1 iff voter i approves project j. Projects
// and voters are indexed in file order, which fixes downstream determinism.
inline Instance cost_utility(const RawElection& election) {
  const int m = static_cast<int>(election.projects.size());
  Eigen::VectorXd sizes(m);
  std::vector<std::string> project_labels;
  project_labels.reserve(election.projects.size());
  std::unordered_map<std::string, int> index;
  for (int j = 0; j < m; ++j) {
    sizes[j] = election.projects[j].cost;
    project_labels.push_back(election.projects[j].id);
    index[election.projects[j].id] = j;
  }
  std::vector<std::vector<int>> approvals;
  std::vector<std::string> voter_labels;
  approvals.reserve(election.votes.size());
  voter_labels.reserve(election.votes.size());
  for (const auto& vote : election.votes) {
    std::vector<int> set;
    set.reserve(vote.approved.size());
    for (const auto& id : vote.approved) set.push_back(index.at(id));
    approvals.push_back(std::move(set));
    voter_labels.push_back(vote.voter_id);
  }
  return Instance(std::move(sizes), election.budget, std::move(approvals),
                  std::move(project_labels), std::move(voter_labels));
}

// Seeded uniform subsample of `count` voters, keeping file order. A partial
// Fisher-Yates shuffle on the counter stream makes the choice independent of
// platform and thread count.
inline RawElection sample_voters(const RawElection& election, int count,
                                 std::uint64_t seed) {
  const int n = static_cast<int>(election.votes.size());
  if (count >= n || count < 0) return election;
  std::vector<int> indices(static_cast<size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < count; ++i) {
    const auto pick = i + static_cast<int>(counter_below(
                              seed, 0x73616d706c65ULL, static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(n - i)));
    std::swap(indices[i], indices[pick]);
  }
  indices.resize(static_cast<size_t>(count));
  std::sort(indices.begin(), indices.end());

  RawElection sampled = election;
  sampled.votes.clear();
  sampled.votes.reserve(static_cast<size_t>(count));
  for (int i : indices) sampled.votes.push_back(election.votes[i]);
  return sampled;
}

}  // namespace ppga

#endif  // PPGA_INGEST_HPP_

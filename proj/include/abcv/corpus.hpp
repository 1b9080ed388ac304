#ifndef ABCV_CORPUS_HPP
#define ABCV_CORPUS_HPP

#include <string>
#include <vector>

#include "abcv/axioms.hpp"

namespace abcv {

// A bundled counterexample instance with the committees its facts talk about.
struct Fixture {
  std::string name;
  std::string role;
  Instance instance;
  std::vector<Committee> committees;
};

const std::vector<std::string>& fixture_names();
const Fixture& fixture(const std::string& name);

struct FactResult {
  std::string description;
  bool pass = false;
};

struct FixtureReport {
  std::string name;
  std::vector<FactResult> facts;
  bool all_pass = true;
};

// Re-derives every asserted fact of the fixture through the library.
FixtureReport replay_fixture(const std::string& name);
std::vector<FixtureReport> replay_all_fixtures();

// Writes every fixture as an instance file plus a .committees sidecar.
void write_corpus(const std::string& directory);

// One row of the compliance grid: a label and the axioms whose conjunction
// the row reports (witness-basedness is the four-axiom conjunction).
struct FingerprintRow {
  std::string label;
  std::vector<AxiomId> components;
};

const std::vector<FingerprintRow>& fingerprint_rows();
const std::vector<NotionId>& fingerprint_notions();

struct FingerprintCell {
  bool holds = true;
  bool expected = true;
  bool exhaustive = true;
  std::string evidence;  // fixture reference or search certificate
};

struct FingerprintResult {
  std::vector<std::vector<FingerprintCell>> cells;  // [row][notion]
  bool matches_expected = true;
  long long pairs_checked = 0;
};

struct FingerprintOptions {
  InstanceFamily family;
  int jobs = 0;
  // permutation rows only check every stride-th instance for these notions
  // (full permutation sweeps elsewhere); 1 means no sampling anywhere
  int permutation_stride_priceable = 1;
};

// Reproduces the compliance tables: every expected failure must replay from
// a fixture (or a search hit), every expected satisfaction must survive the
// family scan at the pinned bounds.
FingerprintResult fingerprint(const FingerprintOptions& options);

// Expected verdict transcriptions.
bool expected_cell(const FingerprintRow& row, NotionId notion);

std::string fingerprint_tsv(const FingerprintResult& result);
std::string fingerprint_grid(const FingerprintResult& result);

// The smaller roadmap table (PJR, EJR, PJR+, EJR+ against the five
// characterization axioms) extracted from the same result.
std::string roadmap_grid(const FingerprintResult& result);

}  // namespace abcv

#endif  // ABCV_CORPUS_HPP

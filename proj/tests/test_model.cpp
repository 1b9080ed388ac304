#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abcv/model.hpp"

using namespace abcv;

TEST_CASE("parse accepts the monotonicity example instance") {
  Instance inst = parse_instance("4 7 6\n0 1 2\n0 1\n3 4 5 6\n3 4 5 6\n");
  CHECK(inst.n == 4);
  CHECK(inst.m == 7);
  CHECK(inst.k == 6);
  CHECK(inst.ballots[0] == set_from_vector({0, 1, 2}));
  CHECK(inst.ballots[1] == set_from_vector({0, 1}));
  CHECK(inst.ballots[2] == inst.ballots[3]);
}

TEST_CASE("parse accepts the smallest legal instance") {
  Instance inst = parse_instance("1 1 1\n0\n");
  CHECK(inst.n == 1);
  CHECK(inst.ballots[0] == set_with(0, 0));
}

TEST_CASE("parse rejects m < k") {
  CHECK_THROWS_AS(parse_instance("2 1 2\n0\n0\n"), ParseError);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance("2 2\n0\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("1 2 1\n0 0\n"), ParseError);   // duplicate
  CHECK_THROWS_AS(parse_instance("1 2 1\n5\n"), ParseError);     // range
  CHECK_THROWS_AS(parse_instance("1 2 1\n1 0\n"), ParseError);   // order
  CHECK_THROWS_AS(parse_instance("2 2 1\n0\n"), ParseError);     // missing row
}

TEST_CASE("comments and empty ballots are legal") {
  Instance inst = parse_instance("# preamble\n2 3 2\n\n0 2\n");
  CHECK(inst.ballots[0] == 0);
  CHECK(inst.ballots[1] == set_from_vector({0, 2}));
}

TEST_CASE("serialize/parse round-trips on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst;
    inst.n = 1 + static_cast<int>(rng() % 6);
    inst.m = 1 + static_cast<int>(rng() % 8);
    inst.k = 1 + static_cast<int>(rng() % inst.m);
    for (int i = 0; i < inst.n; ++i)
      inst.ballots.push_back(rng() & full_set(inst.m));
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
}

TEST_CASE("party list detection follows the one-voter-per-party convention") {
  // the monotonicity example is not a party list because of candidate 2
  Instance inst = parse_instance("4 7 4\n0 1 2\n0 1\n3 4 5 6\n3 4 5 6\n");
  CHECK(!party_list_structure(inst));

  auto restricted = restrict_candidates(inst, full_set(7) & ~set_with(0, 2));
  auto parties = party_list_structure(restricted.instance);
  REQUIRE(parties);
  CHECK(parties->parties.size() == 2);

  // everyone approving everything is a single party
  Instance all = parse_instance("3 2 2\n0 1\n0 1\n0 1\n");
  auto single = party_list_structure(all);
  REQUIRE(single);
  CHECK(single->parties.size() == 1);

  // a candidate approved by nobody blocks the classification
  Instance orphan = parse_instance("2 3 2\n0\n1\n");
  CHECK(!party_list_structure(orphan));

  // an indifferent voter blocks it as well
  Instance indifferent = parse_instance("2 2 2\n0 1\n\n");
  CHECK(!party_list_structure(indifferent));
}

TEST_CASE("lower quota seat counts") {
  // k=50, one third of the voters, 20 candidates -> 16 seats
  Instance inst;
  inst.n = 3;
  inst.m = 21;
  inst.k = 50;  // not a valid committee size for this m; only quotas matter
  PartyListStructure parties;
  parties.parties = {full_set(20), CandSet{1} << 20};
  parties.party_voters = {{0}, {1, 2}};
  parties.party_sizes = {1, 2};
  auto seats = lower_quota_seats(parties, 3, 50);
  CHECK(seats[0] == 16);  // min(floor(50/3), 20)

  // 31% of 10 seats -> 3
  PartyListStructure p2;
  p2.parties = {full_set(5), (full_set(10) & ~full_set(5))};
  p2.party_sizes = {31, 69};
  p2.party_voters = {{}, {}};
  auto seats2 = lower_quota_seats(p2, 100, 10);
  CHECK(seats2[0] == 3);

  // single party takes all seats
  PartyListStructure p3;
  p3.parties = {full_set(6)};
  p3.party_sizes = {4};
  p3.party_voters = {{0, 1, 2, 3}};
  CHECK(lower_quota_seats(p3, 4, 4)[0] == 4);
}

TEST_CASE("satisfies_lower_quota on the JR-vs-LQ party list") {
  Instance inst = parse_instance("4 6 4\n0 1 2\n0 1 2\n3 4 5\n3 4 5\n");
  CHECK(!satisfies_lower_quota(inst, parse_committee("0 1 2 3", inst)));
  CHECK(satisfies_lower_quota(inst, parse_committee("0 1 3 4", inst)));

  Instance one_party = parse_instance("2 4 2\n0 1 2 3\n0 1 2 3\n");
  CHECK(satisfies_lower_quota(one_party, parse_committee("1 3", one_party)));

  Instance not_pl = parse_instance("2 2 1\n0 1\n0\n");
  CHECK_THROWS_AS(satisfies_lower_quota(not_pl, parse_committee("0", not_pl)),
                  PreconditionError);
}

TEST_CASE("lower quota seats sum to at most k on random party lists") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int parties = 1 + static_cast<int>(rng() % 4);
    int m = 0, n = 0;
    PartyListStructure p;
    for (int x = 0; x < parties; ++x) {
      int size = 1 + static_cast<int>(rng() % 3);
      CandSet mask = 0;
      for (int j = 0; j < size; ++j) mask = set_with(mask, m++);
      int voters = 1 + static_cast<int>(rng() % 5);
      p.parties.push_back(mask);
      p.party_sizes.push_back(voters);
      p.party_voters.push_back({});
      n += voters;
    }
    int k = 1 + static_cast<int>(rng() % m);
    auto seats = lower_quota_seats(p, n, k);
    int total = 0;
    for (int s : seats) total += s;
    CHECK(total <= k);
  }
}

TEST_CASE("restriction reindexes and keeps an index map") {
  Instance inst = parse_instance("2 5 2\n0 2 4\n1 3\n");
  auto r = restrict_candidates(inst, set_from_vector({0, 3, 4}));
  CHECK(r.instance.m == 3);
  CHECK(r.instance.ballots[0] == set_from_vector({0, 2}));
  CHECK(r.instance.ballots[1] == set_from_vector({1}));
  CHECK(r.old_of_new == std::vector<int>{0, 3, 4});
  CHECK(r.new_of_old[3] == 1);
  CHECK(r.new_of_old[2] == -1);

  auto identity = restrict_candidates(inst, full_set(5));
  CHECK(identity.instance == inst);

  CHECK_THROWS_AS(restrict_candidates(inst, set_from_vector({0})),
                  PreconditionError);
}

TEST_CASE("support sets") {
  Instance inst = parse_instance("4 7 6\n0 1 2\n0 1\n3 4 5 6\n3 4 5 6\n");
  CHECK(support(inst, 1) == std::vector<int>{0, 1});
  CHECK(support(inst, 6) == std::vector<int>{2, 3});
  CHECK_THROWS_AS(support(inst, 9), PreconditionError);

  Instance empty = parse_instance("2 2 1\n\n\n");
  CHECK(support(empty, 0).empty());
}

TEST_CASE("party structures reconstruct the profile") {
  std::mt19937_64 rng(29);
  int present = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Instance inst;
    inst.n = 1 + static_cast<int>(rng() % 5);
    inst.m = 1 + static_cast<int>(rng() % 5);
    inst.k = 1;
    for (int i = 0; i < inst.n; ++i) inst.ballots.push_back(rng() & full_set(inst.m));
    auto parties = party_list_structure(inst);
    if (!parties) continue;
    ++present;
    int total_voters = 0;
    CandSet covered = 0;
    for (size_t x = 0; x < parties->parties.size(); ++x) {
      CHECK((covered & parties->parties[x]) == 0);
      covered |= parties->parties[x];
      total_voters += parties->party_sizes[x];
      CHECK(parties->party_sizes[x] ==
            static_cast<int>(parties->party_voters[x].size()));
      for (int i : parties->party_voters[x]) {
        CHECK(inst.ballots[i] == parties->parties[x]);
      }
    }
    CHECK(covered == full_set(inst.m));
    CHECK(total_voters == inst.n);
  }
  CHECK(present > 5);
}

TEST_CASE("quota values are exact rationals") {
  auto hare = Quota::hare(5, 2);
  auto droop = Quota::droop(5, 2);
  CHECK(hare.value == Rational(5, 2));
  CHECK(droop.value == Rational(5, 3));
  CHECK(is_ell_large(3, 1, 5, 2));       // 3 >= 5/2
  CHECK(!is_ell_large(2, 1, 5, 2));      // 2 < 5/2
  CHECK(is_droop_ell_large(2, 1, 5, 2)); // 2 > 5/3
  CHECK(!is_droop_ell_large(2, 2, 5, 2));
  CHECK(min_ell_large_size(1, 5, 2) == 3);
}

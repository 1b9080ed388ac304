#include "abcv/model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace abcv {

std::vector<int> set_to_vector(CandSet s) {
  std::vector<int> out;
  while (s) {
    int c = std::countr_zero(s);
    out.push_back(c);
    s &= s - 1;
  }
  return out;
}

CandSet set_from_vector(const std::vector<int>& v) {
  CandSet s = 0;
  for (int c : v) s = set_with(s, c);
  return s;
}

std::string set_to_string(CandSet s) {
  std::string out = "{";
  bool first = true;
  for (int c : set_to_vector(s)) {
    if (!first) out += ",";
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

void validate_instance(const Instance& inst) {
  if (inst.n <= 0) throw ParseError("voter count must be positive");
  if (inst.k <= 0) throw ParseError("committee size must be positive");
  if (inst.m < inst.k) throw ParseError("need m >= k");
  if (inst.m > kMaxCandidates) throw ParseError("too many candidates");
  if (static_cast<int>(inst.ballots.size()) != inst.n)
    throw ParseError("ballot count does not match n");
  CandSet universe = full_set(inst.m);
  for (CandSet b : inst.ballots) {
    if (b & ~universe) throw ParseError("ballot has out-of-range candidate");
  }
}

bool is_valid_committee(const Instance& inst, const Committee& w) {
  return set_size(w.members) == inst.k && !(w.members & ~full_set(inst.m));
}

void require_committee(const Instance& inst, const Committee& w) {
  if (!is_valid_committee(inst, w))
    throw PreconditionError("committee must be a k-subset of the candidates");
}

namespace {

std::vector<int> parse_index_line(const std::string& line, int line_no) {
  std::vector<int> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad token '" +
                       tok + "'");
    }
    if (pos != tok.size() || v < 0)
      throw ParseError("line " + std::to_string(line_no) + ": bad token '" +
                       tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<std::string, int>> content;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    content.emplace_back(line, line_no);
  }
  if (content.empty()) throw ParseError("missing header line");

  auto header = parse_index_line(content[0].first, content[0].second);
  if (header.size() != 3) throw ParseError("header must be 'n m k'");
  Instance inst;
  inst.n = header[0];
  inst.m = header[1];
  inst.k = header[2];
  if (inst.n <= 0 || inst.m <= 0 || inst.k <= 0)
    throw ParseError("n, m, k must be positive");
  if (inst.m < inst.k) throw ParseError("need m >= k");
  if (inst.m > kMaxCandidates) throw ParseError("too many candidates");
  if (static_cast<int>(content.size()) != inst.n + 1)
    throw ParseError("expected " + std::to_string(inst.n) + " ballot lines, got " +
                     std::to_string(content.size() - 1));

  for (int i = 0; i < inst.n; ++i) {
    auto idx = parse_index_line(content[i + 1].first, content[i + 1].second);
    CandSet ballot = 0;
    int prev = -1;
    for (int c : idx) {
      if (c >= inst.m)
        throw ParseError("line " + std::to_string(content[i + 1].second) +
                         ": candidate index out of range");
      if (set_contains(ballot, c))
        throw ParseError("line " + std::to_string(content[i + 1].second) +
                         ": duplicate candidate in ballot");
      if (c < prev)
        throw ParseError("line " + std::to_string(content[i + 1].second) +
                         ": ballot indices must be ascending");
      prev = c;
      ballot = set_with(ballot, c);
    }
    inst.ballots.push_back(ballot);
  }
  validate_instance(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::string out = std::to_string(inst.n) + " " + std::to_string(inst.m) +
                    " " + std::to_string(inst.k) + "\n";
  for (CandSet b : inst.ballots) {
    bool first = true;
    for (int c : set_to_vector(b)) {
      if (!first) out += " ";
      out += std::to_string(c);
      first = false;
    }
    out += "\n";
  }
  return out;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << serialize_instance(inst);
}

Committee parse_committee(const std::string& text, const Instance& inst) {
  auto idx = parse_index_line(text, 1);
  Committee w;
  for (int c : idx) {
    if (c >= inst.m) throw ParseError("committee index out of range");
    if (set_contains(w.members, c))
      throw ParseError("duplicate candidate in committee");
    w.members = set_with(w.members, c);
  }
  if (set_size(w.members) != inst.k)
    throw ParseError("committee must have exactly k = " +
                     std::to_string(inst.k) + " members");
  return w;
}

std::string serialize_committee(const Committee& w) {
  std::string out;
  bool first = true;
  for (int c : set_to_vector(w.members)) {
    if (!first) out += " ";
    out += std::to_string(c);
    first = false;
  }
  return out;
}

std::optional<PartyListStructure> party_list_structure(const Instance& inst) {
  std::map<CandSet, std::vector<int>> groups;
  for (int i = 0; i < inst.n; ++i) {
    if (inst.ballots[i] == 0) return std::nullopt;  // indifferent voter
    groups[inst.ballots[i]].push_back(i);
  }
  CandSet covered = 0;
  for (const auto& [party, voters] : groups) {
    if (party & covered) return std::nullopt;  // overlapping ballots
    covered |= party;
  }
  if (covered != full_set(inst.m)) return std::nullopt;  // unapproved candidates
  PartyListStructure out;
  for (auto& [party, voters] : groups) {
    out.parties.push_back(party);
    out.party_sizes.push_back(static_cast<int>(voters.size()));
    out.party_voters.push_back(std::move(voters));
  }
  return out;
}

std::vector<int> lower_quota_seats(const PartyListStructure& parties, int n,
                                   int k) {
  std::vector<int> out;
  out.reserve(parties.parties.size());
  for (size_t x = 0; x < parties.parties.size(); ++x) {
    long long floor_share =
        static_cast<long long>(k) * parties.party_sizes[x] / n;
    out.push_back(static_cast<int>(
        std::min<long long>(floor_share, set_size(parties.parties[x]))));
  }
  return out;
}

bool satisfies_lower_quota(const Instance& inst, const Committee& w) {
  require_committee(inst, w);
  auto parties = party_list_structure(inst);
  if (!parties) throw PreconditionError("not a party-list instance");
  auto quotas = lower_quota_seats(*parties, inst.n, inst.k);
  for (size_t x = 0; x < parties->parties.size(); ++x) {
    if (set_size(parties->parties[x] & w.members) < quotas[x]) return false;
  }
  return true;
}

RestrictedInstance restrict_candidates(const Instance& inst, CandSet keep) {
  keep &= full_set(inst.m);
  if (set_size(keep) < inst.k)
    throw PreconditionError("restriction must keep at least k candidates");
  RestrictedInstance out;
  out.new_of_old.assign(inst.m, -1);
  for (int c : set_to_vector(keep)) {
    out.new_of_old[c] = static_cast<int>(out.old_of_new.size());
    out.old_of_new.push_back(c);
  }
  out.instance.n = inst.n;
  out.instance.m = set_size(keep);
  out.instance.k = inst.k;
  for (CandSet b : inst.ballots) {
    CandSet nb = 0;
    for (int c : set_to_vector(b & keep)) {
      nb = set_with(nb, out.new_of_old[c]);
    }
    out.instance.ballots.push_back(nb);
  }
  return out;
}

std::vector<int> support(const Instance& inst, int candidate) {
  if (candidate < 0 || candidate >= inst.m)
    throw PreconditionError("unknown candidate");
  std::vector<int> out;
  for (int i = 0; i < inst.n; ++i) {
    if (set_contains(inst.ballots[i], candidate)) out.push_back(i);
  }
  return out;
}

CandSet support_mask_in(const Instance& inst, int candidate) {
  if (candidate < 0 || candidate >= inst.m)
    throw PreconditionError("unknown candidate");
  // voter mask; callers only use this when n <= 64
  if (inst.n > 64) throw PreconditionError("support mask needs n <= 64");
  CandSet out = 0;
  for (int i = 0; i < inst.n; ++i) {
    if (set_contains(inst.ballots[i], candidate)) out |= CandSet{1} << i;
  }
  return out;
}

Instance voter_canonical(const Instance& inst) {
  Instance out = inst;
  std::sort(out.ballots.begin(), out.ballots.end());
  return out;
}

}  // namespace abcv

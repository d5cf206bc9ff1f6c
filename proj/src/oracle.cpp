#include "ligpso/oracle.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace ligpso {

namespace {

struct Candidate {
  double energy;
  BitString chromosome;
  bool valid = false;

  bool better_than(const Candidate& other) const {
    if (!other.valid) return true;
    if (energy != other.energy) return energy < other.energy;
    return chromosome < other.chromosome;
  }
};

}  // namespace

ReducedProblem::ReducedProblem(std::vector<NodeKey> active, LigandModel model, ActiveSite site,
                               EnergyParams params, LengthMode mode)
    : active_(std::move(active)), problem_(std::move(model), std::move(site), params, mode) {
  std::set<NodeKey> seen;
  for (const auto& key : active_) {
    (void)problem_.model().field_offset(key.side, key.node);  // range check
    if (!seen.insert(key).second) {
      throw std::invalid_argument("node " + format_node_list({key}) + " listed twice in active set");
    }
  }
  SideLimits right = problem_.limits(Side::right);
  SideLimits left = problem_.limits(Side::left);
  auto active_on = [this](Side s) {
    return static_cast<std::size_t>(
        std::count_if(active_.begin(), active_.end(), [s](const NodeKey& k) { return k.side == s; }));
  };
  right.bounds.min_groups = std::min(right.bounds.min_groups, active_on(Side::right));
  left.bounds.min_groups = std::min(left.bounds.min_groups, active_on(Side::left));
  problem_.set_limits(right, left);
}

std::size_t ReducedProblem::search_space() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    if (n > kMaxOracleStates) break;
    n *= 8;
  }
  return n;
}

BitString ReducedProblem::expand(const BitString& reduced) const {
  if (reduced.size() != dimension()) {
    throw std::invalid_argument("reduced chromosome has " + std::to_string(reduced.size()) + " bits, expected " +
                                std::to_string(dimension()));
  }
  BitString full(problem_.dimension());
  for (std::size_t i = 0; i < active_.size(); ++i) {
    full.set_field(problem_.model().field_offset(active_[i].side, active_[i].node), kBitsPerGroup,
                   reduced.field(kBitsPerGroup * i, kBitsPerGroup));
  }
  return full;
}

BitString ReducedProblem::contract(const BitString& full) const {
  BitString reduced(dimension());
  for (std::size_t i = 0; i < active_.size(); ++i) {
    reduced.set_field(kBitsPerGroup * i, kBitsPerGroup,
                      full.field(problem_.model().field_offset(active_[i].side, active_[i].node), kBitsPerGroup));
  }
  return reduced;
}

BitString ReducedProblem::mask(const BitString& full) const { return expand(contract(full)); }

BitString ReducedProblem::repair_full(const BitString& full) const { return mask(problem_.repair(mask(full))); }

FitnessFn ReducedProblem::fitness_fn() const {
  return [this](const BitString& reduced) { return problem_.fitness(expand(reduced)); };
}

RepairFn ReducedProblem::repair_fn() const {
  return [this](const BitString& reduced) { return contract(repair_full(expand(reduced))); };
}

OracleResult exhaustive_best(const ReducedProblem& problem, const OracleOptions& options) {
  const std::size_t states = problem.search_space();
  if (states > kMaxOracleStates) {
    throw SearchSpaceTooLarge("search space of " + std::to_string(problem.active().size()) +
                              " active nodes exceeds " + std::to_string(kMaxOracleStates) + " states");
  }
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, states);
  const std::size_t dim = problem.dimension();

  auto search = [&](std::size_t begin, std::size_t end) {
    Candidate best{0.0, {}, false};
    BitString reduced(dim);
    for (std::size_t step = begin; step < end; ++step) {
      const std::size_t index = options.reverse_order ? states - 1 - step : step;
      for (std::size_t b = 0; b < dim; ++b) reduced.set(b, (index >> (dim - 1 - b)) & 1U);
      BitString full = problem.repair_full(problem.expand(reduced));
      Candidate c{problem.energy_full(full), std::move(full), true};
      if (c.better_than(best)) best = std::move(c);
    }
    return best;
  };

  std::vector<Candidate> partial(workers);
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (states + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(states, w * chunk);
      const std::size_t end = std::min(states, begin + chunk);
      threads.emplace_back([&, w, begin, end] { partial[w] = search(begin, end); });
    }
  }

  Candidate best{0.0, {}, false};
  for (auto& c : partial)
    if (c.valid && c.better_than(best)) best = std::move(c);
  return {best.chromosome, best.energy, states};
}

std::vector<NodeKey> parse_node_list(std::string_view text) {
  std::vector<NodeKey> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.size() < 2 || (item[0] != 'R' && item[0] != 'L' && item[0] != 'r' && item[0] != 'l')) {
      throw std::invalid_argument("bad node '" + std::string(item) + "' (expected R<n> or L<n>)");
    }
    int id = 0;
    for (char ch : item.substr(1)) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad node '" + std::string(item) + "'");
      id = id * 10 + (ch - '0');
    }
    out.push_back({(item[0] == 'R' || item[0] == 'r') ? Side::right : Side::left, id});
    pos = comma + 1;
  }
  return out;
}

std::string format_node_list(const std::vector<NodeKey>& nodes) {
  std::string out;
  for (const auto& k : nodes) {
    if (!out.empty()) out += ',';
    out += (k.side == Side::right ? 'R' : 'L') + std::to_string(k.node);
  }
  return out;
}

}  // namespace ligpso

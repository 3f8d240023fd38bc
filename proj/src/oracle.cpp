#include "subpack/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "subpack/constructions.hpp"

namespace subpack {

std::string VerifyReport::summary() const {
  std::ostringstream out;
  out << (valid ? "valid" : "INVALID") << (probabilistic ? " (probabilistic)" : "") << '\n';
  out << "blocks: " << code_size << '\n';
  if (mode == VerifyMode::packing) {
    out << "t: " << t << "  lambda: " << lambda << "  max coverage: " << max_coverage << '\n';
    out << "histogram:";
    for (std::size_t i = 0; i < histogram.size(); ++i) out << " a" << i << '=' << histogram[i];
    out << '\n';
    if (worst_subspace) out << "most covered t-subspace: " << format_subspace_inline(*worst_subspace) << '\n';
  } else {
    out << "delta: " << delta << "  alpha: " << alpha << "  min span: " << min_span << '\n';
    out << "subsets checked: " << subsets_checked << " of " << subsets_total << '\n';
    if (probabilistic) out << "detectable violating fraction (95%): " << detectable_fraction << '\n';
    if (!worst_subset.empty()) {
      out << "worst subset:";
      for (auto i : worst_subset) out << ' ' << i;
      out << '\n';
    }
  }
  return out.str();
}

namespace {

// Blocks together with the ids of the t-subspaces each one contains.
struct Incidence {
  std::vector<Subspace> blocks;
  std::vector<std::vector<std::uint32_t>> tsubs;
  std::vector<Subspace> tspaces;
};

Incidence build_incidence(const Field& f, std::vector<Subspace> blocks, std::size_t dim, std::size_t t) {
  Incidence inc;
  inc.blocks = std::move(blocks);
  const auto coeffs = enumerate_subspaces(f, dim, t);
  std::unordered_map<std::string, std::uint32_t> ids;
  inc.tsubs.reserve(inc.blocks.size());
  for (const auto& b : inc.blocks) {
    std::vector<std::uint32_t> row;
    row.reserve(coeffs.size());
    for (auto& s : subspaces_of(f, b, coeffs)) {
      auto [it, fresh] = ids.try_emplace(s.key(), static_cast<std::uint32_t>(inc.tspaces.size()));
      if (fresh) inc.tspaces.push_back(std::move(s));
      row.push_back(it->second);
    }
    inc.tsubs.push_back(std::move(row));
  }
  return inc;
}

}  // namespace

VerifyReport verify_packing(const PackingCode& code, std::size_t t, std::uint64_t lambda) {
  if (t < 1 || t > code.dim()) throw std::invalid_argument("verify_packing requires 1 <= t <= k");
  VerifyReport r;
  r.mode = VerifyMode::packing;
  r.code_size = code.size();
  r.t = t;
  r.lambda = lambda;
  const auto inc = build_incidence(code.field(), code.blocks(), code.dim(), t);
  std::vector<std::uint64_t> counts(inc.tspaces.size(), 0);
  for (const auto& row : inc.tsubs)
    for (auto id : row) ++counts[id];
  for (std::size_t id = 0; id < counts.size(); ++id)
    if (counts[id] > r.max_coverage) {
      r.max_coverage = counts[id];
      r.worst_subspace = inc.tspaces[id];
    }
  r.histogram.assign(r.max_coverage + 1, 0);
  for (auto c : counts) r.histogram[c] += 1;
  r.histogram[0] = gaussian_binomial(static_cast<unsigned>(code.ambient()), static_cast<unsigned>(t),
                                     code.field().order()) -
                   BigInt(counts.size());
  r.valid = r.max_coverage <= lambda;
  return r;
}

namespace {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

VerifyReport verify_covering(const PackingCode& code, std::size_t delta, std::uint64_t alpha,
                             const CoveringCheck& check) {
  if (alpha < 2) throw std::invalid_argument("verify_covering requires alpha >= 2");
  VerifyReport r;
  r.mode = VerifyMode::covering;
  r.code_size = code.size();
  r.delta = delta;
  r.alpha = alpha;
  r.subsets_total = binomial(code.size(), alpha);
  r.min_span = code.ambient();
  const std::size_t need = code.dim() + delta;
  const auto& blocks = code.blocks();
  const Field& f = code.field();
  if (r.subsets_total == 0) {
    r.valid = true;
    return r;
  }

  auto consider = [&](const std::vector<std::size_t>& subset, std::size_t span) {
    ++r.subsets_checked;
    if (span < r.min_span || r.worst_subset.empty()) {
      r.min_span = span;
      r.worst_subset = subset;
    }
  };

  if (r.subsets_total <= check.budget) {
    // depth-first over increasing index tuples, extending the echelon basis level by level
    std::vector<std::size_t> subset;
    std::vector<EchelonBasis> stack;
    stack.emplace_back(f, code.ambient());
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (subset.size() == alpha) {
        consider(subset, stack.back().rank());
        return;
      }
      const std::size_t remaining = alpha - subset.size();
      for (std::size_t i = from; i + remaining <= blocks.size(); ++i) {
        EchelonBasis next = stack.back();
        next.insert_rows(blocks[i].basis());
        subset.push_back(i);
        stack.push_back(std::move(next));
        rec(i + 1);
        stack.pop_back();
        subset.pop_back();
      }
    };
    rec(0);
  } else {
    r.probabilistic = true;
    std::mt19937_64 rng(check.seed);
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
    for (std::uint64_t s = 0; s < check.samples; ++s) {
      std::set<std::size_t> chosen;
      while (chosen.size() < alpha) chosen.insert(pick(rng));
      EchelonBasis b(f, code.ambient());
      for (auto i : chosen) b.insert_rows(blocks[i].basis());
      consider(std::vector<std::size_t>(chosen.begin(), chosen.end()), b.rank());
    }
    r.detectable_fraction = 1.0 - std::pow(0.05, 1.0 / static_cast<double>(check.samples));
  }
  r.valid = r.min_span >= need;
  return r;
}

namespace {

std::vector<std::size_t> greedy_pass(const Incidence& inc, std::uint64_t lambda, std::mt19937_64& rng) {
  std::vector<std::size_t> order(inc.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint64_t> cov(inc.tspaces.size(), 0);
  std::vector<std::size_t> chosen;
  for (auto c : order) {
    const auto& row = inc.tsubs[c];
    if (std::all_of(row.begin(), row.end(), [&](std::uint32_t v) { return cov[v] < lambda; })) {
      for (auto v : row) ++cov[v];
      chosen.push_back(c);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Iterated greedy: drop a few random blocks, refill first-fit in random
// order, keep the result unless it shrank.
std::vector<std::size_t> improve(const Incidence& inc, std::uint64_t lambda, std::vector<std::size_t> start,
                                 std::mt19937_64& rng, std::uint64_t iterations, std::size_t target) {
  const std::size_t n = inc.blocks.size();
  std::vector<std::uint64_t> cov(inc.tspaces.size(), 0);
  std::vector<std::uint8_t> in(n, 0);
  std::vector<std::size_t> cur = std::move(start);
  for (auto c : cur) {
    in[c] = 1;
    for (auto v : inc.tsubs[c]) ++cov[v];
  }
  auto fits = [&](std::size_t c) {
    for (auto v : inc.tsubs[c])
      if (cov[v] >= lambda) return false;
    return true;
  };
  std::vector<std::size_t> best = cur;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::uint64_t it = 0; it < iterations && best.size() < target && !cur.empty(); ++it) {
    const std::vector<std::size_t> saved = cur;
    const std::size_t drop = std::min<std::size_t>(cur.size(), 1 + rng() % 3);
    for (std::size_t d = 0; d < drop; ++d) {
      const std::size_t pos = rng() % cur.size();
      const std::size_t c = cur[pos];
      cur[pos] = cur.back();
      cur.pop_back();
      in[c] = 0;
      for (auto v : inc.tsubs[c]) --cov[v];
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (auto c : order)
      if (!in[c] && fits(c)) {
        in[c] = 1;
        for (auto v : inc.tsubs[c]) ++cov[v];
        cur.push_back(c);
      }
    if (cur.size() < saved.size()) {
      for (auto c : cur) {
        in[c] = 0;
        for (auto v : inc.tsubs[c]) --cov[v];
      }
      cur = saved;
      for (auto c : cur) {
        in[c] = 1;
        for (auto v : inc.tsubs[c]) ++cov[v];
      }
    } else if (cur.size() > best.size()) {
      best = cur;
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

// Tabu search over sets of exactly `target` blocks, minimising the total
// excess coverage. Returns a conflict-free set or an empty vector.
std::vector<std::size_t> tabu_search(const Incidence& inc, std::uint64_t lambda, std::size_t target,
                                     std::vector<std::size_t> start, std::mt19937_64& rng,
                                     std::uint64_t iterations) {
  const std::size_t n = inc.blocks.size();
  if (target > n || target == 0) return {};
  std::vector<std::uint8_t> in(n, 0);
  std::vector<std::size_t> cur;
  for (auto c : start)
    if (cur.size() < target) {
      in[c] = 1;
      cur.push_back(c);
    }
  std::vector<std::size_t> outside;
  for (std::size_t c = 0; c < n; ++c)
    if (!in[c]) outside.push_back(c);
  std::shuffle(outside.begin(), outside.end(), rng);
  while (cur.size() < target) {
    in[outside.back()] = 1;
    cur.push_back(outside.back());
    outside.pop_back();
  }
  std::vector<std::uint64_t> cov(inc.tspaces.size(), 0);
  std::uint64_t conflicts = 0;
  for (auto c : cur)
    for (auto v : inc.tsubs[c])
      if (++cov[v] > lambda) ++conflicts;

  std::vector<std::uint64_t> tabu_until(n, 0);
  std::vector<std::uint64_t> add_cost(n, 0);
  for (std::uint64_t it = 1; it <= iterations && conflicts > 0; ++it) {
    for (std::size_t c = 0; c < n; ++c) {
      if (in[c]) continue;
      std::uint64_t a = 0;
      for (auto v : inc.tsubs[c]) a += cov[v] >= lambda;
      add_cost[c] = a;
    }
    long best_delta = 0;
    std::size_t best_out = n, best_in = n, ties = 0;
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      const std::size_t o = cur[pos];
      long gain = 0;
      for (auto v : inc.tsubs[o]) gain += cov[v] > lambda;
      if (gain == 0) continue;
      const auto& orow = inc.tsubs[o];
      for (std::size_t i = 0; i < n; ++i) {
        if (in[i]) continue;
        long cost = static_cast<long>(add_cost[i]);
        // t-subspaces shared with o that drop below lambda once o leaves
        for (auto v : inc.tsubs[i])
          if (cov[v] == lambda && std::find(orow.begin(), orow.end(), v) != orow.end()) --cost;
        const long delta = cost - gain;
        const bool allowed = tabu_until[i] < it || static_cast<long>(conflicts) + delta == 0;
        if (!allowed) continue;
        if (best_out == n || delta < best_delta) {
          best_delta = delta;
          best_out = pos;
          best_in = i;
          ties = 1;
        } else if (delta == best_delta && rng() % ++ties == 0) {
          best_out = pos;
          best_in = i;
        }
      }
    }
    if (best_out == n) continue;
    const std::size_t o = cur[best_out];
    for (auto v : inc.tsubs[o])
      if (cov[v]-- > lambda) --conflicts;
    for (auto v : inc.tsubs[best_in])
      if (++cov[v] > lambda) ++conflicts;
    in[o] = 0;
    in[best_in] = 1;
    cur[best_out] = best_in;
    tabu_until[o] = it + 7 + rng() % 10;
  }
  if (conflicts > 0) return {};
  std::sort(cur.begin(), cur.end());
  return cur;
}

PackingCode to_code(const Field& f, const PackingParams& p, const Incidence& inc,
                    const std::vector<std::size_t>& chosen) {
  PackingCode code(f, p.n, p.k);
  for (auto i : chosen) code.add(inc.blocks[i]);
  return code;
}

std::vector<Subspace> all_blocks(const Field& f, const PackingParams& p, std::uint64_t max_candidates) {
  const BigInt total = gaussian_binomial(p.n, p.k, p.q);
  if (total > max_candidates)
    throw std::length_error(describe(p) + " has " + total.str() + " candidate blocks (limit " +
                            std::to_string(max_candidates) + ")");
  return enumerate_subspaces(f, p.n, p.k);
}

class BranchAndBound {
 public:
  BranchAndBound(const Incidence& inc, std::uint64_t lambda, std::size_t per_block, std::uint64_t cutoff,
                 std::uint64_t budget)
      : inc_(inc), lambda_(lambda), per_block_(per_block), cutoff_(cutoff), budget_(budget),
        cov_(inc.tspaces.size(), 0), stamp_(inc.tspaces.size(), 0), group_(inc.tspaces.size(), 0),
        touch_(inc.tspaces.size(), 0) {}

  void set_incumbent(std::size_t size) { best_size_ = size; }
  std::size_t best_size() const { return best_size_; }
  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }
  bool reached_cutoff() const { return best_size_ >= cutoff_; }

  /// Searches codes containing `fixed` whose pairwise intersections have
  /// dimension at most max_meet.
  void run(const std::vector<std::size_t>& fixed, const std::vector<std::vector<std::uint8_t>>& meet,
           std::size_t max_meet) {
    meet_ = &meet;
    max_meet_ = max_meet;
    std::size_t taken = 0;
    for (auto c : fixed) {
      if (!compatible(c)) break;
      take(c);
      ++taken;
    }
    if (taken == fixed.size()) {
      std::vector<std::size_t> alive;
      for (std::size_t c = 0; c < inc_.blocks.size(); ++c)
        if (std::find(fixed.begin(), fixed.end(), c) == fixed.end() && compatible(c)) alive.push_back(c);
      dfs(alive);
    }
    while (taken-- > 0) drop(chosen_.back());
  }

 private:
  bool fits(std::size_t c) const {
    for (auto v : inc_.tsubs[c])
      if (cov_[v] >= lambda_) return false;
    return true;
  }
  bool compatible(std::size_t c) const {
    if (!fits(c)) return false;
    for (auto x : chosen_)
      if ((*meet_)[c][x] > max_meet_) return false;
    return true;
  }
  void take(std::size_t c) {
    for (auto v : inc_.tsubs[c]) ++cov_[v];
    chosen_.push_back(c);
  }
  void drop(std::size_t c) {
    for (auto v : inc_.tsubs[c]) --cov_[v];
    chosen_.pop_back();
  }

  // Candidates are grouped by their least-slack t-subspace; a group sharing
  // V contributes at most the residual capacity of V. Also the capacity
  // count divided by the number of t-subspaces per block.
  std::size_t bound(const std::vector<std::size_t>& alive, std::size_t from) {
    ++epoch_;
    std::size_t grouped = 0;
    std::uint64_t capacity = 0;
    for (std::size_t i = from; i < alive.size(); ++i) {
      const auto& row = inc_.tsubs[alive[i]];
      std::uint32_t key = row.front();
      std::uint64_t key_slack = lambda_ - cov_[key];
      for (auto v : row) {
        const std::uint64_t slack = lambda_ - cov_[v];
        if (stamp_[v] != epoch_) {
          stamp_[v] = epoch_;
          group_[v] = 0;
          touch_[v] = 0;
        }
        if (touch_[v] < slack) {
          ++touch_[v];
          ++capacity;
        }
        if (slack < key_slack) {
          key = v;
          key_slack = slack;
        }
      }
      if (group_[key] < key_slack) {
        ++group_[key];
        ++grouped;
      }
    }
    return std::min<std::size_t>(grouped, capacity / per_block_);
  }

  void dfs(const std::vector<std::size_t>& alive) {
    if (aborted_ || reached_cutoff()) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (chosen_.size() > best_size_) {
      best_size_ = chosen_.size();
      best_ = chosen_;
      if (reached_cutoff()) return;
    }
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (chosen_.size() + (alive.size() - i) <= best_size_) return;
      if (chosen_.size() + bound(alive, i) <= best_size_) return;
      const std::size_t c = alive[i];
      take(c);
      std::vector<std::size_t> next;
      next.reserve(alive.size() - i);
      for (std::size_t j = i + 1; j < alive.size(); ++j)
        if (fits(alive[j]) && (*meet_)[alive[j]][c] <= max_meet_) next.push_back(alive[j]);
      dfs(next);
      drop(c);
      if (aborted_ || reached_cutoff()) return;
    }
  }

  const Incidence& inc_;
  std::uint64_t lambda_;
  std::size_t per_block_;
  std::uint64_t cutoff_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> cov_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint64_t> group_;
  std::vector<std::uint64_t> touch_;
  std::uint32_t epoch_ = 0;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::size_t best_size_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  const std::vector<std::vector<std::uint8_t>>* meet_ = nullptr;
  std::size_t max_meet_ = 0;
};

}  // namespace

SearchResult exhaustive_max(const PackingParams& p, const SearchOptions& options) {
  p.validate();
  const Field f(p.q);
  BoundEngine local;
  BoundEngine& engine = options.engine ? *options.engine : local;
  SearchResult result;
  result.cutoff = engine.upper(p);

  auto blocks = all_blocks(f, p, options.max_candidates);
  if (p.t == p.k || !p.nontrivial()) {
    result.witness = PackingCode(f, p.n, p.k, std::move(blocks));
    result.value = result.witness.size();
    result.complete = true;
    result.note = "every block";
    return result;
  }
  const auto inc = build_incidence(f, std::move(blocks), p.k, p.t);
  const std::uint64_t cutoff = to_u64(std::min(result.cutoff, BigInt(inc.blocks.size())));

  // incumbent: linkage construction and a few greedy passes
  PackingCode incumbent = build_packing_code(p);
  std::mt19937_64 rng(options.seed);
  for (int pass = 0; pass < 4; ++pass) {
    auto g = improve(inc, p.lambda, greedy_pass(inc, p.lambda, rng), rng, options.improve_iterations, cutoff);
    if (g.size() > incumbent.size()) incumbent = to_code(f, p, inc, g);
    if (incumbent.size() >= cutoff) break;
  }
  // then try to grow it one block at a time
  while (incumbent.size() < cutoff) {
    std::vector<std::size_t> start;
    {
      std::unordered_map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < inc.blocks.size(); ++i) index.emplace(inc.blocks[i].key(), i);
      for (const auto& b : incumbent.blocks()) start.push_back(index.at(b.key()));
    }
    auto bigger = tabu_search(inc, p.lambda, incumbent.size() + 1, start, rng, options.tabu_iterations);
    if (bigger.empty()) break;
    incumbent = to_code(f, p, inc, bigger);
  }
  result.witness = incumbent;
  result.value = incumbent.size();
  if (result.value >= cutoff) {
    result.complete = true;
    result.note = "incumbent meets the upper bound";
    return result;
  }

  const std::size_t n_blocks = inc.blocks.size();
  std::vector<std::vector<std::uint8_t>> meet(n_blocks, std::vector<std::uint8_t>(n_blocks, 0));
  for (std::size_t a = 0; a < n_blocks; ++a)
    for (std::size_t b = a + 1; b < n_blocks; ++b) {
      const Subspace pair[] = {inc.blocks[a], inc.blocks[b]};
      const auto d = static_cast<std::uint8_t>(2 * p.k - span_dim(f, pair));
      meet[a][b] = meet[b][a] = d;
    }

  BranchAndBound bb(inc, p.lambda, to_u64(gaussian_binomial(p.k, p.t, p.q)), cutoff, options.node_budget);
  bb.set_incumbent(result.value);
  // Block 0 can be assumed present; the pair of blocks with the largest
  // intersection dimension j can be moved to (block 0, first block meeting it in j).
  for (std::size_t j = 0; j < p.k && !bb.aborted() && !bb.reached_cutoff(); ++j) {
    std::size_t rep = n_blocks;
    for (std::size_t x = 1; x < n_blocks; ++x)
      if (meet[0][x] == j) {
        rep = x;
        break;
      }
    if (rep == n_blocks) continue;
    bb.run({0, rep}, meet, j);
  }
  result.nodes = bb.nodes();
  if (bb.best_size() > result.value) {
    result.value = bb.best_size();
    result.witness = to_code(f, p, inc, bb.best());
  }
  result.complete = !bb.aborted() || result.value >= cutoff;
  result.note = bb.aborted() && result.value < cutoff ? "node budget exhausted" : "search finished";
  return result;
}

PackingCode greedy_lower(const PackingParams& p, std::uint64_t seed, unsigned passes, std::uint64_t improve_iterations,
                         std::uint64_t max_candidates) {
  p.validate();
  if (passes == 0) throw std::invalid_argument("greedy_lower needs at least one pass");
  const Field f(p.q);
  const auto inc = build_incidence(f, all_blocks(f, p, max_candidates), p.k, p.t);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> best;
  for (unsigned i = 0; i < passes; ++i) {
    auto g = improve(inc, p.lambda, greedy_pass(inc, p.lambda, rng), rng, improve_iterations, inc.blocks.size());
    if (g.size() > best.size()) best = std::move(g);
  }
  return to_code(f, p, inc, best);
}

}  // namespace subpack

#include "subpack/table.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

namespace subpack {

bool TableCell::consistent() const {
  if (!fixture) return true;
  return bounds.upper >= fixture->lower && bounds.lower <= fixture->upper;
}

bool TableCell::matches() const {
  return fixture && bounds.lower == fixture->lower && bounds.upper == fixture->upper;
}

const TableCell* BoundTable::find(unsigned k, unsigned t) const {
  for (const auto& c : cells)
    if (c.bounds.params.k == k && c.bounds.params.t == t) return &c;
  return nullptr;
}

BoundTable build_table(unsigned q, unsigned n, std::uint64_t lambda, BoundEngine& engine,
                       const KnownValues* fixtures) {
  BoundTable table;
  table.q = q;
  table.n = n;
  table.lambda = lambda;
  std::vector<PackingParams> points;
  for (unsigned k = 2; k + 1 <= n; ++k)
    for (unsigned t = 1; t <= k; ++t) points.push_back({q, n, k, t, lambda});
  for (const auto& p : points) p.validate();
  table.cells.resize(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) table.cells[i].bounds = engine.evaluate(points[i]);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  if (fixtures)
    for (auto& cell : table.cells)
      if (const auto* kv = fixtures->find(cell.bounds.params)) cell.fixture = *kv;
  return table;
}

namespace {

std::string interval(const BigInt& lo, const BigInt& hi) { return lo == hi ? lo.str() : lo.str() + "-" + hi.str(); }

// Method that attains the final value on one side.
std::string winner(const BoundResult& r, BoundSide side) {
  const BigInt& target = side == BoundSide::upper ? r.upper : r.lower;
  for (const auto& e : r.provenance)
    if (e.side == side && e.applied && e.value == target) return e.method;
  return "?";
}

}  // namespace

std::string render_table(const BoundTable& table, bool compare) {
  std::ostringstream out;
  out << "Bounds for A_" << table.q << '(' << table.n << ",k,t;" << table.lambda << ")\n\n";
  unsigned max_k = 0;
  for (const auto& c : table.cells) max_k = std::max(max_k, c.bounds.params.k);

  std::vector<std::string> methods;
  auto note = [&](const std::string& m) {
    auto it = std::find(methods.begin(), methods.end(), m);
    if (it == methods.end()) {
      methods.push_back(m);
      return methods.size();
    }
    return static_cast<std::size_t>(it - methods.begin()) + 1;
  };

  const int width = 20;
  out << std::setw(4) << "k\\t";
  for (unsigned t = 1; t <= max_k; ++t) out << std::setw(width) << t;
  out << '\n';
  for (unsigned k = 2; k <= max_k; ++k) {
    out << std::setw(4) << k;
    for (unsigned t = 1; t <= max_k; ++t) {
      const auto* c = table.find(k, t);
      if (!c) {
        out << std::setw(width) << "";
        continue;
      }
      const auto& r = c->bounds;
      std::string text = interval(r.lower, r.upper) + " [" + std::to_string(note(winner(r, BoundSide::lower))) + "," +
                         std::to_string(note(winner(r, BoundSide::upper))) + "]";
      out << std::setw(width) << text;
    }
    out << '\n';
  }
  out << "\n[lower,upper] method notes:\n";
  for (std::size_t i = 0; i < methods.size(); ++i) out << "  " << i + 1 << ": " << methods[i] << '\n';

  if (compare) {
    std::size_t matched = 0, compared = 0;
    std::ostringstream diffs;
    for (const auto& c : table.cells) {
      if (!c.fixture) continue;
      ++compared;
      if (c.matches()) {
        ++matched;
        continue;
      }
      diffs << "  k=" << c.bounds.params.k << " t=" << c.bounds.params.t << ": computed "
            << interval(c.bounds.lower, c.bounds.upper) << ", fixture " << interval(c.fixture->lower, c.fixture->upper)
            << (c.consistent() ? "" : "  CONTRADICTION") << '\n';
    }
    out << "\nComparison with fixtures: " << matched << " of " << compared << " cells identical\n" << diffs.str();
  }
  return out.str();
}

}  // namespace subpack

// Bloom filters, Latin transversals and the super-set construction.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "derand/constructions.hpp"
#include "derand/error.hpp"
#include "enumerate.hpp"

namespace derand {

using detail::fmt_double;

namespace {

constexpr double kBloomBase = 0.878;

std::size_t distinct_bits(const HashFamily& h) {
  const auto bits = bloom_filter_bits(h);
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

}  // namespace

std::size_t bloom_hash_count(std::uint32_t n_bits, std::size_t members) {
  if (members == 0) return 1;
  return std::max<std::size_t>(1, (n_bits + members - 1) / members);
}

std::vector<std::uint8_t> bloom_filter_bits(const HashFamily& hashes) {
  std::vector<std::uint8_t> bits(hashes.n_bits, 0);
  for (const auto& table : hashes.tables)
    for (auto b : table) bits[b] = 1;
  return bits;
}

std::uint32_t bloom_hash(const HashFamily& hashes, const SetFamily& members, std::size_t i,
                         std::uint64_t x) {
  const auto& m = members.members();
  const auto it = std::lower_bound(m.begin(), m.end(), x);
  if (it != m.end() && *it == x) return hashes.tables[i][static_cast<std::size_t>(it - m.begin())];
  const std::uint64_t h = mix64(hashes.salt ^ mix64(x * hashes.tables.size() + i));
  return static_cast<std::uint32_t>(h % hashes.n_bits);
}

bool bloom_accepts(const HashFamily& hashes, const SetFamily& members, std::uint64_t x) {
  const auto bits = bloom_filter_bits(hashes);
  for (std::size_t i = 0; i < hashes.tables.size(); ++i)
    if (!bits[bloom_hash(hashes, members, i, x)]) return false;
  return true;
}

Construction build_bloom(const SetFamily& members, std::uint32_t n_bits) {
  Construction c;
  c.name = "bloom";
  const std::size_t m = members.size();
  if (n_bits == 0) throw InvalidArgument("bloom: filter needs at least one bit");
  const std::size_t k = bloom_hash_count(n_bits, m);
  const double fp_bound = std::pow(kBloomBase, static_cast<double>(k));
  c.params = {{"bits", n_bits}, {"members", m}, {"hashes", k}, {"fp_bound", fp_bound}};
  c.claimed_prob = 0.5;
  c.claimed_expr = "Pr[(w/n)^k <= 0.878^k = " + fmt_double(fp_bound) + "] >= 1/2, large n";
  if (m == 0) c.premise.fail("member set must be non-empty");
  if (n_bits < m) c.premise.fail("filter must have at least as many bits as members");
  c.premise.notes.push_back("asymptotic claim: holds for large enough n");

  c.sample = [n_bits, k, m](RngStream& rng) -> Candidate {
    HashFamily h;
    h.n_bits = n_bits;
    h.tables.assign(k, std::vector<std::uint32_t>(m));
    for (auto& t : h.tables)
      for (auto& v : t) v = static_cast<std::uint32_t>(rng.below(n_bits));
    h.salt = rng.next();
    return h;
  };
  c.is_good = [fp_bound, k](const Candidate& cand) {
    const auto& h = std::get<HashFamily>(cand);
    const double w = static_cast<double>(distinct_bits(h));
    return std::pow(w / h.n_bits, static_cast<double>(k)) <= fp_bound + 1e-12;
  };
  c.validate_solution = c.is_good;
  c.statistic = [k](const Candidate& cand) {
    const auto& h = std::get<HashFamily>(cand);
    return std::pow(static_cast<double>(distinct_bits(h)) / h.n_bits, static_cast<double>(k));
  };
  c.statistic_name = "false-positive probability";
  detail::set_product_enumerator(c, detail::uniform_digits(k * m, n_bits),
                                 [n_bits, k, m](std::span<const std::uint32_t> d) -> Candidate {
                                   HashFamily h;
                                   h.n_bits = n_bits;
                                   for (std::size_t i = 0; i < k; ++i)
                                     h.tables.emplace_back(d.begin() + static_cast<std::ptrdiff_t>(i * m),
                                                           d.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
                                   return h;
                                 });
  return c;
}

bool is_latin_transversal(const IntMatrix& matrix, const std::vector<std::uint32_t>& perm) {
  if (perm.size() != matrix.size()) return false;
  std::vector<std::int64_t> seen;
  for (std::size_t i = 0; i < perm.size(); ++i) seen.push_back(matrix.at(i, perm[i]));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

Construction build_latin_transversal(const IntMatrix& matrix, std::size_t k) {
  Construction c;
  c.name = "latin";
  const std::size_t n = matrix.size();
  c.params = {{"n", n}, {"k", k}};
  c.claimed_prob = k == 0 ? 1.0 : std::exp2(-4.0 * (static_cast<double>(k) - 1.0));
  c.claimed_expr = "2^(-4(k-1))";

  if (n < 3) c.premise.fail("n must be at least 3");
  std::vector<std::int64_t> values = matrix.entries();
  std::sort(values.begin(), values.end());
  bool exact = k > 0;
  for (std::size_t i = 0; i < values.size() && exact;) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    exact = j - i == k;
    i = j;
  }
  if (!exact) c.premise.fail("every value must appear exactly k = " + std::to_string(k) + " times");
  if (16 * k > n - std::min<std::size_t>(n, 1)) c.premise.fail("k must be at most (n-1)/16");

  if (n >= 2) {
    const double nd = static_cast<double>(n);
    const double p = 1.0 / (nd * (nd - 1.0));
    double d = 4.0 * nd * static_cast<double>(k);
    // Conflicting pairs T: equal entries in distinct rows and columns.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t count = 0;
    for (std::size_t a = 0; a < n * n && count <= 4000; ++a)
      for (std::size_t b = a + 1; b < n * n && count <= 4000; ++b)
        if (matrix.entries()[a] == matrix.entries()[b] && a / n != b / n && a % n != b % n) {
          pairs.push_back({a, b});
          ++count;
        }
    if (count <= 4000) {
      std::size_t measured = 0;
      for (std::size_t x = 0; x < pairs.size(); ++x) {
        std::size_t deg = 0;
        const std::size_t r[] = {pairs[x].first / n, pairs[x].second / n};
        const std::size_t col[] = {pairs[x].first % n, pairs[x].second % n};
        for (std::size_t y = 0; y < pairs.size(); ++y) {
          if (x == y) continue;
          bool shares = false;
          for (auto cell : {pairs[y].first, pairs[y].second})
            for (int t = 0; t < 2; ++t) shares = shares || cell / n == r[t] || cell % n == col[t];
          deg += shares;
        }
        measured = std::max(measured, deg);
      }
      c.premise.notes.push_back("measured dependency degree " + std::to_string(measured) +
                                " over " + std::to_string(pairs.size()) + " conflicting pairs (closed form 4nk = " +
                                fmt_double(d) + ")");
      d = static_cast<double>(measured);
      c.premise.lll = lopsided_lll(p, d, pairs.size());
    } else {
      c.premise.lll = lopsided_lll(p, d, static_cast<std::size_t>(nd * nd * static_cast<double>(k) / 2.0));
    }
  }

  c.sample = [n](RngStream& rng) -> Candidate { return Permutation{rng.permutation(n)}; };
  c.is_good = [matrix](const Candidate& cand) {
    return is_latin_transversal(matrix, std::get<Permutation>(cand).perm);
  };
  c.validate_solution = c.is_good;
  double size = 1.0;
  for (std::size_t i = 2; i <= n; ++i) size *= static_cast<double>(i);
  c.space_size = size;
  c.enumerate = [n, size](const CandidateVisitor& visit) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    do visit(Permutation{perm}, 1.0 / size);
    while (std::next_permutation(perm.begin(), perm.end()));
  };
  return c;
}

Construction build_super_set(const SetFamily& target, unsigned m) {
  Construction c;
  c.name = "superset";
  const unsigned n_u = target.universe_bits();
  if (n_u > 24) throw InvalidArgument("superset: universe limited to 24 bits");
  const std::size_t universe = std::size_t{1} << n_u;
  const std::size_t t = m <= n_u ? std::size_t{1} << (n_u - m) : 1;
  const std::size_t s = target.size();
  c.params = {{"universe_bits", n_u}, {"m", m}, {"target_size", s}, {"subset_size", t}};
  c.claimed_prob = std::exp2(-static_cast<double>(m + 1) * static_cast<double>(s));
  c.claimed_expr = "2^(-(m+1)|S|)";
  if (m > n_u) c.premise.fail("m must not exceed the universe bits");
  else if (m == n_u ? s > 0 : s >= (std::size_t{1} << (n_u - m - 1)))
    c.premise.fail("|S| must be below 2^(n-m-1)");

  c.sample = [universe, t](RngStream& rng) -> Candidate {
    std::vector<std::uint32_t> idx(universe);
    std::iota(idx.begin(), idx.end(), 0u);
    Subset out;
    out.members.assign(universe, 0);
    for (std::size_t i = 0; i < t; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(universe - i));
      std::swap(idx[i], idx[j]);
      out.members[idx[i]] = 1;
    }
    return out;
  };
  c.is_good = [target](const Candidate& cand) {
    const auto& members = std::get<Subset>(cand).members;
    return std::all_of(target.members().begin(), target.members().end(),
                       [&](std::uint64_t x) { return members[x] != 0; });
  };
  c.validate_solution = c.is_good;
  c.space_size = std::exp(log_binomial(static_cast<double>(universe), static_cast<double>(t)));
  c.enumerate = [universe, t, size = c.space_size](const CandidateVisitor& visit) {
    std::vector<std::uint8_t> mask(universe, 0);
    std::fill(mask.end() - static_cast<std::ptrdiff_t>(t), mask.end(), 1);
    const double p = 1.0 / std::round(size);
    do visit(Subset{mask}, p);
    while (std::next_permutation(mask.begin(), mask.end()));
  };
  return c;
}

}  // namespace derand

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "dtwc/numerics.hpp"

using namespace dtwc;

namespace {

// Independent factorization oracle for the Mobius function.
int moebius_oracle(std::uint64_t m) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    primes.push_back(p);
    m /= p;
    if (m % p == 0) return 0;
  }
  if (m > 1) primes.push_back(m);
  return primes.size() % 2 == 0 ? 1 : -1;
}

// Pascal-triangle oracle for binomial coefficients.
Int pascal(std::uint64_t n, std::int64_t k) {
  if (k < 0 || (std::uint64_t)k > n) return 0;
  std::vector<Int> row = {1};
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::vector<Int> next(i + 1, 1);
    for (std::uint64_t j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[(size_t)k];
}

}  // namespace

TEST_CASE("moebius values") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(2) == -1);
  for (std::uint64_t m = 1; m <= 500; ++m) CHECK(moebius(m) == moebius_oracle(m));
  CHECK_THROWS_AS(moebius(0), std::domain_error);
}

TEST_CASE("moebius sum over divisors vanishes for n > 1") {
  for (std::uint64_t n : {12ull, 30ull, 36ull, 97ull}) {
    int sum = 0;
    for (std::uint64_t m = 1; m <= n; ++m)
      if (n % m == 0) sum += moebius(m);
    CHECK(sum == 0);
  }
}

TEST_CASE("moebius is multiplicative on coprime pairs") {
  for (std::uint64_t a = 1; a <= 100; ++a)
    for (std::uint64_t b = 1; b <= 100; ++b) {
      if (std::gcd(a, b) != 1) continue;
      CHECK(moebius(a * b) == moebius(a) * moebius(b));
    }
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(10, 5) == pascal(10, 5));
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 7) == 0);
  for (std::uint64_t n = 0; n <= 20; ++n)
    for (std::int64_t k = -1; k <= (std::int64_t)n + 1; ++k)
      CHECK(binomial(n, k) == pascal(n, k));
}

TEST_CASE("compositions: base cases and lexicographic order") {
  auto one = enumerate_compositions(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].parts == std::vector<int>{1});

  auto three = enumerate_compositions(3);
  REQUIRE(three.size() == 4);
  CHECK(three[0].parts == std::vector<int>{1, 1, 1});
  CHECK(three[1].parts == std::vector<int>{1, 2});
  CHECK(three[2].parts == std::vector<int>{2, 1});
  CHECK(three[3].parts == std::vector<int>{3});

  CHECK(enumerate_compositions(6).size() == 32);
}

TEST_CASE("compositions: count 2^(n-1), no duplicates, parts sum correctly") {
  for (int total = 1; total <= 12; ++total) {
    auto comps = enumerate_compositions(total);
    CHECK(comps.size() == (size_t)1 << (total - 1));
    std::set<std::vector<int>> seen;
    for (const auto& c : comps) {
      CHECK(std::accumulate(c.parts.begin(), c.parts.end(), 0) == total);
      for (int p : c.parts) CHECK(p >= 1);
      CHECK(seen.insert(c.parts).second);
    }
  }
}

TEST_CASE("compositions: bound guard") {
  CHECK_THROWS_AS(enumerate_compositions(21), std::domain_error);
}

namespace {

// Independent validity check: n-1 edges, connected, acyclic, oriented
// low-to-high.
bool is_valid_oriented_tree(const OrientedTree& t) {
  int n = t.vertex_count;
  if ((int)t.edges.size() != n - 1) return false;
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [i, j] : t.edges) {
    if (!(1 <= i && i < j && j <= n)) return false;
    int a = find(i), b = find(j);
    if (a == b) return false;  // cycle
    parent[a] = b;
  }
  for (int v = 1; v <= n; ++v)
    if (find(v) != find(1)) return false;
  return true;
}

}  // namespace

TEST_CASE("oriented trees: base cases and Cayley counts") {
  auto t1 = enumerate_oriented_trees(1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].edges.empty());

  CHECK(enumerate_oriented_trees(3).size() == 3);
  CHECK(enumerate_oriented_trees(5).size() == 125);

  for (int n = 2; n <= 7; ++n) {
    auto trees = enumerate_oriented_trees(n);
    size_t cayley = 1;
    for (int i = 0; i < n - 2; ++i) cayley *= (size_t)n;
    CHECK(trees.size() == cayley);
    std::set<std::vector<std::pair<int, int>>> seen;
    for (auto& t : trees) {
      CHECK(is_valid_oriented_tree(t));
      auto key = t.edges;
      std::sort(key.begin(), key.end());
      CHECK(seen.insert(key).second);
    }
  }
}

TEST_CASE("oriented trees: bound guard") {
  CHECK_THROWS_AS(enumerate_oriented_trees(9), std::domain_error);
  EnumLimits wide;
  wide.max_tree_vertices = 9;
  CHECK_NOTHROW(enumerate_oriented_trees(8, wide));
}

TEST_CASE("rational arithmetic agrees with cross-multiplication") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 50);
  for (int i = 0; i < 1000; ++i) {
    long long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational lhs = Rational(a, b) + Rational(c, d);
    // oracle: reduce (ad + cb) / bd by hand
    long long n = a * d + c * b, m = b * d;
    long long g = std::gcd(n < 0 ? -n : n, m);
    if (g == 0) g = 1;
    CHECK(rat_num(lhs) == Int(n / g));
    CHECK(rat_den(lhs) == Int(m / g));
    CHECK(rat_den(lhs) > 0);
  }
}

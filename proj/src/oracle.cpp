#include "waldcert/oracle.hpp"

#include "waldcert/exactmath.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

namespace waldcert {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t out = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) out = mul_mod(out, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return out;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Scales a nonzero vector so that its first nonzero entry is 1.
std::vector<std::uint64_t> normalized(std::vector<std::uint64_t> v, std::uint64_t p) {
  auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
  const std::uint64_t inv = inverse_mod(*lead, p);
  for (auto& x : v) x = mul_mod(x, inv, p);
  return v;
}

void exponents(int vars, int degree, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (vars == 1) {
    current.push_back(degree);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current.push_back(e);
    exponents(vars - 1, degree - e, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> monomials(int vars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  exponents(vars, degree, current, out);
  return out;
}

void check_parameters(int dim, std::int64_t points, int multiplicity, std::uint64_t prime) {
  if (dim < 1 || points < 1 || multiplicity < 1) throw std::invalid_argument("oracle needs N, s, m >= 1");
  if (prime < 3 || prime >= (std::uint64_t{1} << 32) || !is_prime(prime))
    throw std::invalid_argument("p = " + std::to_string(prime) + " must be an odd prime below 2^32");
  // |P^N(F_p)| = 1 + p + ... + p^N; stop summing once it exceeds s.
  std::uint64_t available = 0;
  std::uint64_t term = 1;
  for (int i = 0; i <= dim && available < static_cast<std::uint64_t>(points); ++i) {
    available += term;
    if (term > static_cast<std::uint64_t>(points)) break;
    term *= prime;
  }
  if (available < static_cast<std::uint64_t>(points))
    throw std::invalid_argument("P^" + std::to_string(dim) + "(F_" + std::to_string(prime) + ") has fewer than " +
                                std::to_string(points) + " points");
}

}  // namespace

std::int64_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t prime) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("rank_mod_p: ragged matrix");
    for (auto& x : row) x %= prime;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint64_t inv = inverse_mod(rows[rank][c], prime);
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] = mul_mod(rows[rank][j], inv, prime);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      const std::uint64_t f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t sub = mul_mod(f, rows[rank][j], prime);
        rows[i][j] = rows[i][j] >= sub ? rows[i][j] - sub : rows[i][j] + prime - sub;
      }
    }
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

InterpolationInstance make_instance(int dim, std::int64_t points, int multiplicity, std::uint64_t prime,
                                    std::uint64_t seed) {
  check_parameters(dim, points, multiplicity, prime);
  InterpolationInstance inst{dim, points, multiplicity, prime, seed, {}};
  SplitMix64 rng(seed);
  std::set<std::vector<std::uint64_t>> seen;
  while (static_cast<std::int64_t>(inst.coords.size()) < points) {
    std::vector<std::uint64_t> p(dim + 1);
    for (auto& x : p) x = rng.next() % prime;
    if (std::all_of(p.begin(), p.end(), [](std::uint64_t x) { return x == 0; })) continue;
    if (!seen.insert(normalized(p, prime)).second) continue;
    inst.coords.push_back(std::move(p));
  }
  return inst;
}

InterpolationInstance transform_instance(const InterpolationInstance& inst, std::uint64_t seed) {
  const int n = inst.dim + 1;
  const std::uint64_t p = inst.prime;
  SplitMix64 rng(seed);
  std::vector<std::vector<std::uint64_t>> matrix;
  do {
    matrix.assign(n, std::vector<std::uint64_t>(n));
    for (auto& row : matrix)
      for (auto& x : row) x = rng.next() % p;
  } while (rank_mod_p(matrix, p) < n);
  InterpolationInstance out = inst;
  for (std::size_t k = 0; k < inst.coords.size(); ++k) {
    const auto& pt = inst.coords[k];
    for (int i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for (int j = 0; j < n; ++j) acc = (acc + mul_mod(matrix[i][j], pt[j], p)) % p;
      out.coords[k][i] = acc;
    }
  }
  return out;
}

PostulationReport interpolation_rank(const InterpolationInstance& inst, int degree) {
  const std::uint64_t p = inst.prime;
  if (degree < inst.multiplicity - 1)
    throw std::invalid_argument("degree must be >= m - 1");
  if (p <= static_cast<std::uint64_t>(inst.multiplicity) * static_cast<std::uint64_t>(std::max(degree, 1)))
    throw std::invalid_argument("p = " + std::to_string(p) + " must exceed m*d = " +
                                std::to_string(inst.multiplicity * degree));
  const int vars = inst.dim + 1;
  const auto columns = monomials(vars, degree);
  const auto orders = monomials(vars, inst.multiplicity - 1);

  // Binomials C(a, b) mod p for a <= degree.
  std::vector<std::vector<std::uint64_t>> pascal(degree + 1, std::vector<std::uint64_t>(degree + 1, 0));
  for (int a = 0; a <= degree; ++a) {
    pascal[a][0] = 1;
    for (int b = 1; b <= a; ++b) pascal[a][b] = (pascal[a - 1][b - 1] + (b < a ? pascal[a - 1][b] : 0)) % p;
  }

  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(inst.coords.size() * orders.size());
  for (const auto& pt : inst.coords) {
    std::vector<std::vector<std::uint64_t>> powers(vars, std::vector<std::uint64_t>(degree + 1, 1));
    for (int i = 0; i < vars; ++i)
      for (int e = 1; e <= degree; ++e) powers[i][e] = mul_mod(powers[i][e - 1], pt[i], p);
    for (const auto& g : orders) {
      std::vector<std::uint64_t> row(columns.size(), 0);
      for (std::size_t c = 0; c < columns.size(); ++c) {
        std::uint64_t v = 1;
        for (int i = 0; i < vars && v; ++i) {
          const int a = columns[c][i];
          if (a < g[i]) {
            v = 0;
            break;
          }
          v = mul_mod(mul_mod(v, pascal[a][g[i]], p), powers[i][a - g[i]], p);
        }
        row[c] = v;
      }
      rows.push_back(std::move(row));
    }
  }

  PostulationReport r;
  r.instance = inst;
  r.degree = degree;
  r.columns = static_cast<std::int64_t>(columns.size());
  r.expected_rank = std::min<std::int64_t>(r.columns, static_cast<std::int64_t>(rows.size()));
  r.rank = rank_mod_p(std::move(rows), p);
  r.good_postulation = r.rank == r.expected_rank;
  return r;
}

int empirical_alpha(const InterpolationInstance& inst) {
  for (int d = inst.multiplicity;; ++d) {
    const auto r = interpolation_rank(inst, d);
    if (r.rank < r.columns) return d;
  }
}

int empirical_alpha(int dim, std::int64_t points, int multiplicity, std::uint64_t prime, std::uint64_t seed) {
  return empirical_alpha(make_instance(dim, points, multiplicity, prime, seed));
}

double OracleRun::agreement() const {
  if (alphas.empty()) return 0.0;
  const auto hits = std::count(alphas.begin(), alphas.end(), alpha_upper);
  return static_cast<double>(hits) / static_cast<double>(alphas.size());
}

OracleRun run_oracle(int dim, std::int64_t points, int multiplicity, std::uint64_t prime, int seeds) {
  check_parameters(dim, points, multiplicity, prime);
  OracleRun run{dim, points, multiplicity, prime, 0, {}, {}};
  const BigInt conditions = big(points) * binom(dim + multiplicity - 1, dim);
  while (binom(dim + run.alpha_upper, dim) <= conditions) ++run.alpha_upper;

  std::vector<std::future<PostulationReport>> jobs;
  for (int seed = 0; seed < seeds; ++seed) {
    jobs.push_back(std::async(std::launch::async, [=] {
      const auto inst = make_instance(dim, points, multiplicity, prime, static_cast<std::uint64_t>(seed));
      return interpolation_rank(inst, empirical_alpha(inst));
    }));
  }
  for (auto& job : jobs) {
    run.reports.push_back(job.get());
    run.alphas.push_back(run.reports.back().degree);
  }
  return run;
}

std::string postulation_csv_header() { return "N,s,m,p,seed,d,rank,expected,good"; }

std::string postulation_csv_row(const PostulationReport& r) {
  std::ostringstream os;
  os << r.instance.dim << ',' << r.instance.points << ',' << r.instance.multiplicity << ',' << r.instance.prime
     << ',' << r.instance.seed << ',' << r.degree << ',' << r.rank << ',' << r.expected_rank << ','
     << (r.good_postulation ? "true" : "false");
  return os.str();
}

}  // namespace waldcert

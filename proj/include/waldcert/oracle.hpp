#pragma once

// Empirical initial degrees of I^(m) for random points over F_p.
//
// Points are drawn from splitmix64 seeded with `seed`: each projective
// coordinate is next() mod p, redrawing zero vectors and projective
// duplicates. A degree-d form F vanishes to order >= m at P exactly when
// every Hasse derivative D^g F of order |g| = m-1 vanishes at P (valid for
// d >= m-1 and p > d), which gives C(N+m-1, N) rows per point against the
// C(N+d, N) monomial columns.

#include <cstdint>
#include <string>
#include <vector>

namespace waldcert {

inline constexpr std::uint64_t kDefaultPrime = 32003;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

struct InterpolationInstance {
  int dim = 0;
  std::int64_t points = 0;
  int multiplicity = 0;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::uint64_t>> coords;  // s rows of N+1 residues
};

/// Throws std::invalid_argument unless N >= 1, s >= 1, m >= 1 and p is an
/// odd prime.
InterpolationInstance make_instance(int dim, std::int64_t points, int multiplicity,
                                    std::uint64_t prime = kDefaultPrime, std::uint64_t seed = 0);

/// The same points under a random invertible linear change of coordinates
/// drawn from `seed`.
InterpolationInstance transform_instance(const InterpolationInstance& inst, std::uint64_t seed);

struct PostulationReport {
  InterpolationInstance instance;
  int degree = 0;
  std::int64_t rank = 0;
  std::int64_t expected_rank = 0;  // min(C(N+d,N), s C(N+m-1,N))
  std::int64_t columns = 0;        // C(N+d,N)
  bool good_postulation = false;
};

/// Throws std::invalid_argument when p <= m d or d < m - 1.
PostulationReport interpolation_rank(const InterpolationInstance& inst, int degree);

/// Least d >= m with a nonzero degree-d form of multiplicity >= m at every
/// point of `inst`.
int empirical_alpha(const InterpolationInstance& inst);
int empirical_alpha(int dim, std::int64_t points, int multiplicity, std::uint64_t prime, std::uint64_t seed);

std::int64_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t prime);
bool is_prime(std::uint64_t n);

struct OracleRun {
  int dim = 0;
  std::int64_t points = 0;
  int multiplicity = 0;
  std::uint64_t prime = kDefaultPrime;
  int alpha_upper = 0;
  std::vector<int> alphas;                  // one per seed 0..k-1
  std::vector<PostulationReport> reports;   // rank at degree alpha for every seed
  double agreement() const;                 // fraction of seeds with alpha == alpha_upper
};

/// Runs seeds 0..seeds-1 in parallel; results are ordered by seed.
OracleRun run_oracle(int dim, std::int64_t points, int multiplicity, std::uint64_t prime, int seeds);

std::string postulation_csv_header();  // N,s,m,p,seed,d,rank,expected,good
std::string postulation_csv_row(const PostulationReport& r);

}  // namespace waldcert

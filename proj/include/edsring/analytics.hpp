#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsring/construction.hpp"

namespace edsring {

struct Checkpoint {
  std::uint64_t X = 0;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  Rational ratio;
};

// hits / total over primes up to X, with the same ratio at geometric
// checkpoints ... X/4, X/2, X. Nothing here claims a limit.
struct DensityReport {
  std::string predicate;
  std::uint64_t X = 0;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  Rational ratio;
  std::vector<Checkpoint> trend;
  std::uint64_t excluded = 0;  // undecided cases left out of hits and total
};

// Increasing checkpoints X / 2^k, ..., X / 2, X, at most `count` of them and none below `floor`.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t X, unsigned count = 8, std::uint64_t floor = 10);

// Accumulates hits/total for increasing keys and snapshots at checkpoints.
class DensityCounter {
 public:
  DensityCounter(std::string predicate, std::uint64_t X);
  void add(std::uint64_t key, bool hit);
  void exclude() { ++report_.excluded; }
  DensityReport finish();

 private:
  void flush_through(std::uint64_t key);
  DensityReport report_;
  std::vector<std::uint64_t> marks_;
  std::size_t next_ = 0;
};

nlohmann::json to_json(const DensityReport& r);
std::string to_csv(const DensityReport& r);  // checkpoint,hits,total
std::string to_gnuplot(const DensityReport& r);

struct HeightRow {
  std::int64_t n = 0;
  double log_d = 0;
  double ratio = 0;  // log d_n / n^2
};
struct HeightSlope {
  double slope = 0;  // least squares of log d_n against n^2 through the origin
  std::vector<HeightRow> rows;
};
HeightSlope height_slope(const Curve& curve, std::int64_t n_min, std::int64_t n_max);
nlohmann::json to_json(const HeightSlope& h);

// Primes ell <= X with y(ell P) in iv; exact coordinates up to the budget's
// exact cap, torus enclosures above it. Closed interval ends count as inside.
DensityReport equidistribution_report(const Curve& curve, const YInterval& iv, std::uint64_t X,
                                      const ConstructionBudget& budget = {});

// Fraction of GL_2(F_ell) fixing a nonzero vector.
Rational gl2_fixed_fraction(std::uint64_t ell);
// The same by running over every matrix; ell <= 7.
Rational gl2_fixed_fraction_enumerated(std::uint64_t ell);

// Good p <= X with ell | #E(F_p).
DensityReport factor_divisibility_frequency(const Curve& curve, std::uint64_t ell, std::uint64_t X);

struct OmegaCheckpoint {
  std::uint64_t X = 0;
  std::uint64_t total = 0;
  std::array<Rational, 4> below;  // fraction with omega < t for t = 1..4
};
struct OmegaReport {
  std::uint64_t X = 0;
  std::map<unsigned, std::uint64_t> histogram;
  std::vector<OmegaCheckpoint> trend;
};
OmegaReport omega_distribution(const Curve& curve, std::uint64_t X);
nlohmann::json to_json(const OmegaReport& r);

// Primes ell <= Y with mu_ell > eps, 0 < eps <= 1. Undecided ell are excluded and tallied.
DensityReport mu_epsilon_report(const Curve& curve, const Rational& eps, std::uint64_t Y,
                                std::uint64_t sweep_bound = 100'000);

struct TDensity {
  DensityReport t1, t2;
  unsigned r = 0;               // certified terms
  Rational tail_bound;          // 2^-r, the bound on the uncomputed tail of T1
  Rational t1_ceiling;          // |s_bad <= X| / pi(X) + sum of mu_{ell_i}
  std::uint64_t t2b_count = 0;  // at most (log2 X)^2
  double t2b_limit = 0;
};
TDensity T_window_density(const Curve& curve, const TWindow& w, const LSequence& seq);
nlohmann::json to_json(const TDensity& d);

}  // namespace edsring

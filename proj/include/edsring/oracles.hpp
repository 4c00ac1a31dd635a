#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsring/construction.hpp"

namespace edsring {

// minimal: S = T1. maximal: S = all primes outside T2.
enum class SPolicy { minimal, maximal };
SPolicy parse_policy(const std::string& s);  // "min" | "max"
std::string to_string(SPolicy p);

struct ClosureMember {
  std::int64_t n = 0;
  Rational y;  // y(nP); y(-nP) = -y
};

struct ClosureReport {
  std::int64_t N = 0;
  SPolicy policy = SPolicy::minimal;
  std::vector<ClosureMember> members;  // n > 0; -n is a member alongside
  std::vector<std::int64_t> undecided;
  std::optional<Rational> min_gap;      // over all y(+-nP) of members
  std::optional<Rational> cluster_gap;  // least y(ell_{i+1} P) - y(ell_i P) inside the window
};

// Decision procedures for the T sets. Every test works from n_p: q lies in
// S_m exactly when n_q | m, so membership reduces to the order of P mod p and
// to deciding whether p is the largest prime of some d-value.
class Oracles {
 public:
  Oracles(const Curve& curve, LSequence seq, ConstructionBudget budget = {});

  Verdict member_T1(std::uint64_t p) const;
  Verdict member_T2a(std::uint64_t p) const;  // throws BadPrime on s_bad
  Verdict member_T2b(std::uint64_t p) const;
  Verdict member_T2c(std::uint64_t p) const;
  Verdict member_T2(std::uint64_t p) const;

  // nP lies on the affine model over Z[S^-1] iff S_n is inside S.
  Verdict ring_membership(std::int64_t n, SPolicy policy) const;
  ClosureReport closure_report(std::int64_t N, SPolicy policy) const;

  const SequenceOracle& sequence() const { return seq_; }
  const Curve& curve() const { return curve_; }

  // Whether p is the largest prime factor of base. Every prime of base must
  // have n_q = n and p must divide it.
  Truth is_largest(std::uint64_t p, std::uint64_t n, Integer base) const;

 private:
  // Some prime q with n_q = m exists (d_m has a prime outside every d_{m/r}).
  bool has_primitive(std::uint64_t m) const;
  Truth hits_T2(std::uint64_t m, std::string& which) const;

  const Curve& curve_;
  SequenceOracle seq_;
  ConstructionBudget budget_;
};

nlohmann::json to_json(const ClosureReport& r);

}  // namespace edsring

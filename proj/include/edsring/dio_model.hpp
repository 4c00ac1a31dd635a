#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsring/construction.hpp"

namespace edsring {

enum class EmbeddingSource { curve, synthetic };

// i -> y_i on the window [1, N] with |y_i - i| <= 1/(10i), injective.
class AdmissibleEmbedding {
 public:
  // Throws InvalidConfig unless the values cover [1, N] and are admissible.
  AdmissibleEmbedding(EmbeddingSource source, std::vector<Rational> values, std::string label);

  static AdmissibleEmbedding identity(std::int64_t N);
  // y_i = i + s_i / (10 i) with s_i = +1 (sign > 0), -1 (sign < 0) or (-1)^i (sign == 0).
  static AdmissibleEmbedding extremal(std::int64_t N, int sign);
  // Offsets drawn uniformly from the closed admissible range on a grid of 2*10^6 + 1 points.
  static AdmissibleEmbedding random(std::int64_t N, std::uint64_t seed);
  // y_i = y(ell_i P) for the certified terms of seq.
  static AdmissibleEmbedding from_sequence(const Curve& curve, const LSequence& seq);

  EmbeddingSource source() const { return source_; }
  const std::string& label() const { return label_; }
  std::int64_t window() const { return static_cast<std::int64_t>(values_.size()); }
  const Rational& y(std::int64_t i) const;  // throws WindowError outside [1, N]

 private:
  EmbeddingSource source_;
  std::vector<Rational> values_;  // values_[i - 1] = y_i
  std::string label_;
};

// The bare inequalities on three (two) rational values.
bool add_relation(const Rational& ym, const Rational& yn, const Rational& yq);
bool square_relation(const Rational& ym, const Rational& yn);

// m + n = q decoded as |y_m + y_n - y_q| <= 3/10.
bool add_predicate(std::int64_t m, std::int64_t n, std::int64_t q, const AdmissibleEmbedding& e);
// m^2 = n decoded as |y_m^2 - y_n| <= 4/10.
bool square_predicate(std::int64_t m, std::int64_t n, const AdmissibleEmbedding& e);
// mn = q through (m + n)^2 = m^2 + n^2 + q + q, each intermediate located by
// searching the window. Throws WindowError when (m + n)^2 is past it.
bool mul_predicate(std::int64_t m, std::int64_t n, std::int64_t q, const AdmissibleEmbedding& e);

// z with z_1^2 + ... + z_4^2 = n, z_1 >= ... >= z_4 >= 0, largest squares first.
std::array<std::int64_t, 4> four_squares(std::int64_t n);

struct Counterexample {
  std::string predicate;
  std::vector<std::int64_t> args;
  bool decoded = false;
  bool actual = false;
};

struct ModelReport {
  std::int64_t N = 0;
  std::string embedding;
  std::uint64_t add_checked = 0, square_checked = 0, mul_checked = 0;
  std::uint64_t mul_out_of_window = 0;  // triples whose (m + n)^2 is past N
  std::vector<Counterexample> counterexamples;
  double seconds = 0;
};

// Every add, square and mul tuple over [1, N] against integer arithmetic.
ModelReport model_check(std::int64_t N, const AdmissibleEmbedding& e);
nlohmann::json to_json(const ModelReport& r, bool timing);

}  // namespace edsring

#include "edsring/dio_model.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "edsring/errors.hpp"

namespace edsring {
namespace {

const Rational kAddSlack(3, 10);
const Rational kSquareSlack(4, 10);

Rational offset(std::int64_t i) { return Rational(1, static_cast<unsigned long>(10 * i)); }

// The unique index k in the window with pred(k), or 0.
template <typename Pred>
std::int64_t locate(const AdmissibleEmbedding& e, Pred pred) {
  for (std::int64_t k = 1; k <= e.window(); ++k)
    if (pred(k)) return k;
  return 0;
}

}  // namespace

AdmissibleEmbedding::AdmissibleEmbedding(EmbeddingSource source, std::vector<Rational> values, std::string label)
    : source_(source), values_(std::move(values)), label_(std::move(label)) {
  std::set<Rational> seen;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    auto i = static_cast<std::int64_t>(k + 1);
    if (abs(Rational(values_[k] - i)) > offset(i)) {
      throw InvalidConfig("y_" + std::to_string(i) + " = " + to_string(values_[k]) + " is not admissible");
    }
    if (!seen.insert(values_[k]).second) throw InvalidConfig("embedding is not injective");
  }
}

AdmissibleEmbedding AdmissibleEmbedding::identity(std::int64_t N) {
  std::vector<Rational> v;
  for (std::int64_t i = 1; i <= N; ++i) v.emplace_back(i);
  return {EmbeddingSource::synthetic, std::move(v), "identity"};
}

AdmissibleEmbedding AdmissibleEmbedding::extremal(std::int64_t N, int sign) {
  std::vector<Rational> v;
  for (std::int64_t i = 1; i <= N; ++i) {
    int s = sign > 0 ? 1 : sign < 0 ? -1 : (i % 2 == 0 ? 1 : -1);
    v.push_back(Rational(i) + s * offset(i));
  }
  const char* label = sign > 0 ? "extremal+" : sign < 0 ? "extremal-" : "extremal-alternating";
  return {EmbeddingSource::synthetic, std::move(v), label};
}

AdmissibleEmbedding AdmissibleEmbedding::random(std::int64_t N, std::uint64_t seed) {
  constexpr long kGrid = 1'000'000;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-kGrid, kGrid);
  std::vector<Rational> v;
  for (std::int64_t i = 1; i <= N; ++i) {
    Rational r(pick(rng), static_cast<unsigned long>(10 * i * kGrid));
    r.canonicalize();
    v.push_back(Rational(i) + r);
  }
  return {EmbeddingSource::synthetic, std::move(v), "random:" + std::to_string(seed)};
}

AdmissibleEmbedding AdmissibleEmbedding::from_sequence(const Curve& curve, const LSequence& seq) {
  std::vector<Rational> v;
  for (auto& w : seq.witnesses) v.push_back(w.y ? *w.y : curve.multiple(static_cast<std::int64_t>(w.ell)).y());
  return {EmbeddingSource::curve, std::move(v), "curve"};
}

const Rational& AdmissibleEmbedding::y(std::int64_t i) const {
  if (i < 1 || i > window()) {
    throw WindowError("index " + std::to_string(i) + " outside the window [1, " + std::to_string(window()) + "]");
  }
  return values_[static_cast<std::size_t>(i - 1)];
}

bool add_relation(const Rational& ym, const Rational& yn, const Rational& yq) {
  Rational s = ym + yn - yq;
  return abs(s) <= kAddSlack;
}

bool square_relation(const Rational& ym, const Rational& yn) {
  Rational s = ym * ym - yn;
  return abs(s) <= kSquareSlack;
}

bool add_predicate(std::int64_t m, std::int64_t n, std::int64_t q, const AdmissibleEmbedding& e) {
  return add_relation(e.y(m), e.y(n), e.y(q));
}

bool square_predicate(std::int64_t m, std::int64_t n, const AdmissibleEmbedding& e) {
  return square_relation(e.y(m), e.y(n));
}

bool mul_predicate(std::int64_t m, std::int64_t n, std::int64_t q, const AdmissibleEmbedding& e) {
  for (std::int64_t i : {m, n, q}) e.y(i);
  if ((m + n) * (m + n) > e.window()) {
    throw WindowError("mul needs index " + std::to_string((m + n) * (m + n)) + " in the window");
  }
  std::int64_t a = locate(e, [&](std::int64_t k) { return add_predicate(m, n, k, e); });
  std::int64_t b = a ? locate(e, [&](std::int64_t k) { return square_predicate(a, k, e); }) : 0;
  std::int64_t c = locate(e, [&](std::int64_t k) { return square_predicate(m, k, e); });
  std::int64_t d = locate(e, [&](std::int64_t k) { return square_predicate(n, k, e); });
  if (!a || !b || !c || !d) throw InvariantViolation("an intermediate inside the window was not found");
  std::int64_t s = locate(e, [&](std::int64_t k) { return add_predicate(c, d, k, e); });
  if (!s) throw InvariantViolation("m^2 + n^2 was not found inside the window");
  // anything not found below is past the window, hence past (m + n)^2
  std::int64_t t = locate(e, [&](std::int64_t k) { return add_predicate(s, q, k, e); });
  if (!t) return false;
  std::int64_t u = locate(e, [&](std::int64_t k) { return add_predicate(t, q, k, e); });
  return u != 0 && e.y(u) == e.y(b);
}

std::array<std::int64_t, 4> four_squares(std::int64_t n) {
  if (n < 0) throw PreconditionFailed("four_squares needs n >= 0");
  std::array<std::int64_t, 4> z{};
  auto isqrt = [](std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  };
  // depth-first from the largest square down; the first hit is returned
  auto go = [&](auto&& self, int slot, std::int64_t rest, std::int64_t cap) -> bool {
    if (slot == 3) {
      std::int64_t r = isqrt(rest);
      if (r * r != rest || r > cap) return false;
      z[3] = r;
      return true;
    }
    for (std::int64_t v = std::min(isqrt(rest), cap); v >= 0; --v) {
      if (rest - v * v > (3 - slot) * v * v) break;  // the remaining slots cannot make up the rest
      z[static_cast<std::size_t>(slot)] = v;
      if (self(self, slot + 1, rest - v * v, v)) return true;
    }
    return false;
  };
  if (!go(go, 0, n, isqrt(n))) throw InvariantViolation("no four-square representation of " + std::to_string(n));
  return z;
}

ModelReport model_check(std::int64_t N, const AdmissibleEmbedding& e) {
  if (N < 1) throw PreconditionFailed("N must be positive");
  if (N > e.window()) throw WindowError("embedding covers only [1, " + std::to_string(e.window()) + "]");
  auto start = std::chrono::steady_clock::now();
  ModelReport r;
  r.N = N;
  r.embedding = e.label();
  auto note = [&](const char* pred, std::vector<std::int64_t> args, bool decoded, bool actual) {
    if (decoded != actual) r.counterexamples.push_back({pred, std::move(args), decoded, actual});
  };
  for (std::int64_t m = 1; m <= N; ++m) {
    for (std::int64_t n = 1; n <= N; ++n) {
      for (std::int64_t q = 1; q <= N; ++q) {
        note("add", {m, n, q}, add_predicate(m, n, q, e), m + n == q);
        ++r.add_checked;
      }
      note("square", {m, n}, square_predicate(m, n, e), m * m == n);
      ++r.square_checked;
    }
  }
  for (std::int64_t m = 1; m <= N; ++m) {
    for (std::int64_t n = 1; n <= N; ++n) {
      if ((m + n) * (m + n) > N) {
        r.mul_out_of_window += static_cast<std::uint64_t>(N);
        continue;
      }
      for (std::int64_t q = 1; q <= N; ++q) {
        note("mul", {m, n, q}, mul_predicate(m, n, q, e), m * n == q);
        ++r.mul_checked;
      }
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const ModelReport& r, bool timing) {
  nlohmann::json ce = nlohmann::json::array();
  for (auto& c : r.counterexamples)
    ce.push_back({{"predicate", c.predicate}, {"args", c.args}, {"decoded", c.decoded}, {"actual", c.actual}});
  nlohmann::json j = {{"N", r.N},
                      {"embedding", r.embedding},
                      {"add_checked", r.add_checked},
                      {"square_checked", r.square_checked},
                      {"mul_checked", r.mul_checked},
                      {"mul_out_of_window", r.mul_out_of_window},
                      {"counterexamples", ce}};
  if (timing) j["seconds"] = r.seconds;
  return j;
}

}  // namespace edsring

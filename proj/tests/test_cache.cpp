#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "edsring/cache.hpp"
#include "edsring/config.hpp"
#include "edsring/errors.hpp"
#include "fixtures.hpp"

using namespace edsring;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("edsring-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

CacheRecord fresh(std::int64_t n) {
  return make_record(fixtures::ref(), n, fixtures::ref().denom_profile(n, FactoringBudget{}));
}

}  // namespace

TEST_CASE("cached records reload equal to recomputation") {
  TempDir dir;
  {
    Cache c(dir.path.string(), fixtures::ref());
    CHECK(c.size() == 0);
    for (std::int64_t n = 1; n <= 15; ++n) c.append(fresh(n));
  }
  Cache again(dir.path.string(), fixtures::ref());
  CHECK(again.size() == 15);
  CHECK(again.skipped() == 0);
  for (std::int64_t n = 1; n <= 15; ++n) {
    auto r = again.find(n);
    REQUIRE(r);
    CacheRecord want = fresh(n);
    CHECK(r->point == want.point);
    CHECK(r->d == want.d);
    CHECK(r->support == want.support);
    CHECK(r->complete == want.complete);
    CHECK(to_json(*r).dump() == to_json(want).dump());
  }
  CHECK_FALSE(again.find(16));
}

TEST_CASE("record line format") {
  CHECK(to_json(fresh(4)).dump() ==
        R"({"fingerprint":"41d6eac7d335ee2f","n":4,"x":"-287/1296","y":"40879/46656","d_n":"81",)"
        R"("support":[["3",4]],"complete":true,"cofactor":"1"})");
}

TEST_CASE("corrupt, foreign and inconsistent lines are skipped") {
  TempDir dir;
  fs::create_directories(dir.path);
  std::string fp = fixtures::ref().config().fingerprint();
  {
    std::ofstream out(dir.path / (fp + ".jsonl"));
    out << to_json(fresh(2)).dump() << '\n';
    out << "{\"fingerprint\": \"41d6\n";  // torn write
    auto foreign = to_json(fresh(3));
    foreign["fingerprint"] = "0000000000000000";
    out << foreign.dump() << '\n';
    auto wrong = to_json(fresh(5));
    wrong["d_n"] = "82368";
    out << wrong.dump() << '\n';
    auto off = to_json(fresh(6));
    off["y"] = "1/2";
    out << off.dump() << '\n';
    out << "\n" << to_json(fresh(7)).dump() << '\n';
  }
  Cache c(dir.path.string(), fixtures::ref());
  CHECK(c.size() == 2);
  CHECK(c.skipped() == 4);
  CHECK(c.find(2));
  CHECK(c.find(7));
  CHECK_FALSE(c.find(5));
}

TEST_CASE("append rejects records that do not belong") {
  TempDir dir;
  Cache c(dir.path.string(), fixtures::ref());
  CacheRecord r = fresh(4);
  r.d = 80;
  CHECK_THROWS_AS(c.append(r), InvariantViolation);
  r = fresh(4);
  r.fingerprint = "x";
  CHECK_THROWS_AS(c.append(r), PreconditionFailed);
}

TEST_CASE("sequence persistence") {
  TempDir dir;
  Cache c(dir.path.string(), fixtures::ref());
  CHECK_FALSE(c.load_sequence(1, 300));
  c.store_sequence(fixtures::seq1(), 300);
  auto s = c.load_sequence(1, 300);
  REQUIRE(s);
  CHECK(to_json(*s) == to_json(fixtures::seq1()));
  CHECK_FALSE(c.load_sequence(1, 301));
  CHECK_FALSE(c.load_sequence(2, 300));
  for (auto& e : fs::directory_iterator(dir.path)) CHECK(e.path().string().find(".tmp") == std::string::npos);
}

TEST_CASE("configuration") {
  AppConfig d = config_from_json(nlohmann::json::object());
  CHECK(d.curve.fingerprint() == CurveConfig::reference().fingerprint());
  CHECK(d.construct_count == 1);
  CHECK(d.construct_prime_bound == 1000);

  auto j = nlohmann::json::parse(R"({
    "curve": {"a": -2, "b": "1", "generator": ["0", "1"]},
    "caps": {"index_cap": 500},
    "budget": {"trial_bound": 1000, "L_window": 100},
    "construct": {"count": 2, "prime_bound": 5000},
    "policy": "max"
  })");
  AppConfig c = config_from_json(j);
  CHECK(c.curve.a == -2);
  CHECK(c.curve.s_bad.count(2));
  CHECK(c.caps.index_cap == 500);
  CHECK(c.budget.factoring.trial_bound == 1000);
  CHECK(c.budget.L_window == 100);
  CHECK(c.construct_count == 2);
  CHECK(c.policy == SPolicy::maximal);
  // serialising and reading back is the identity
  CHECK(to_json(config_from_json(to_json(c))) == to_json(c));

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"curve": {"a": 0, "b": 0, "generator": [0, 0]}})")),
                  SingularCurve);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"curve": {"a": 1, "b": 1, "generator": [0, 2]}})")),
                  NotOnCurve);
  CHECK_THROWS_AS(
      config_from_json(nlohmann::json::parse(R"({"curve": {"a": 1, "b": 1, "generator": [0, 1], "s_bad": [31]}})")),
      InvalidConfig);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"budget": {"trial_bound": -1}})")), InvalidConfig);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"caps": {"index_cap": "big"}})")), InvalidConfig);
}

#include "edsring/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "edsring/errors.hpp"

namespace edsring {
namespace fs = std::filesystem;

nlohmann::ordered_json to_json(const CacheRecord& r) {
  nlohmann::ordered_json support = nlohmann::ordered_json::array();
  for (auto& pp : r.support) support.push_back({pp.prime.get_str(), pp.exponent});
  nlohmann::ordered_json j;
  j["fingerprint"] = r.fingerprint;
  j["n"] = r.n;
  j["x"] = to_string(r.point.x());
  j["y"] = to_string(r.point.y());
  j["d_n"] = r.d.get_str();
  j["support"] = support;
  j["complete"] = r.complete;
  j["cofactor"] = r.cofactor.get_str();
  return j;
}

CacheRecord cache_record_from_json(const nlohmann::json& j) {
  CacheRecord r;
  r.fingerprint = j.at("fingerprint").get<std::string>();
  r.n = j.at("n").get<std::int64_t>();
  r.point = RationalPoint(parse_rational(j.at("x").get<std::string>()), parse_rational(j.at("y").get<std::string>()));
  r.d = parse_integer(j.at("d_n").get<std::string>());
  for (auto& e : j.at("support")) r.support.push_back({parse_integer(e.at(0).get<std::string>()), e.at(1).get<unsigned>()});
  r.complete = j.at("complete").get<bool>();
  r.cofactor = parse_integer(j.at("cofactor").get<std::string>());
  return r;
}

CacheRecord make_record(const Curve& curve, std::int64_t n, const DenomProfile& prof) {
  if (n == 0) throw PreconditionFailed("the identity has no affine record");
  CacheRecord r;
  r.fingerprint = curve.config().fingerprint();
  r.n = n;
  r.point = curve.multiple(n);
  r.d = prof.d;
  r.support = prof.support;
  r.complete = prof.complete;
  r.cofactor = prof.cofactor;
  return r;
}

namespace {

// Cheap checks that tie a record to the curve: the point is on it, d_n is the
// prime-to-s_bad denominator of x, and the support multiplies back to d_n.
bool consistent(const Curve& curve, const CacheRecord& r) {
  if (r.n == 0 || r.point.is_identity() || !curve.contains(r.point)) return false;
  if (curve.strip_bad(r.point.x().get_den()) != r.d) return false;
  Integer prod = product(r.support) * r.cofactor;
  if (prod != r.d) return false;
  if (r.complete != (r.cofactor == 1)) return false;
  for (auto& pp : r.support)
    if (curve.is_bad(pp.prime) || pp.exponent == 0) return false;
  return true;
}

}  // namespace

Cache::Cache(std::string dir, const Curve& curve)
    : dir_(std::move(dir)), curve_(curve), fingerprint_(curve.config().fingerprint()) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw InvalidConfig("cannot create cache directory " + dir_ + ": " + ec.message());
  load();
}

std::optional<std::string> Cache::dir_from_env() {
  const char* v = std::getenv("EDSRING_CACHE_DIR");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

std::string Cache::records_path() const { return (fs::path(dir_) / (fingerprint_ + ".jsonl")).string(); }
std::string Cache::sequence_path() const { return (fs::path(dir_) / (fingerprint_ + ".sequence.json")).string(); }

void Cache::load() {
  std::ifstream in(records_path());
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CacheRecord r;
    try {
      r = cache_record_from_json(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      std::cerr << "warning: " << records_path() << ":" << lineno << ": corrupt cache line skipped\n";
      ++skipped_;
      continue;
    }
    if (r.fingerprint != fingerprint_) {
      ++skipped_;
      continue;
    }
    if (!consistent(curve_, r)) {
      std::cerr << "warning: " << records_path() << ":" << lineno << ": record for n = " << r.n
                << " does not match the curve, skipped\n";
      ++skipped_;
      continue;
    }
    records_.insert_or_assign(r.n, std::move(r));
  }
}

std::optional<CacheRecord> Cache::find(std::int64_t n) const {
  auto it = records_.find(n);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void Cache::append(const CacheRecord& r) {
  if (r.fingerprint != fingerprint_) throw PreconditionFailed("record belongs to another curve");
  if (!consistent(curve_, r)) throw InvariantViolation("refusing to cache an inconsistent record");
  std::string line = to_json(r).dump() + "\n";
  int fd = ::open(records_path().c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw InvalidConfig("cannot open " + records_path() + ": " + std::strerror(errno));
  if (::flock(fd, LOCK_EX) != 0) {
    ::close(fd);
    throw InvalidConfig("cannot lock " + records_path());
  }
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t w = ::write(fd, p, left);
    if (w < 0) {
      if (errno == EINTR) continue;
      ::flock(fd, LOCK_UN);
      ::close(fd);
      throw InvalidConfig("write to " + records_path() + " failed");
    }
    p += w;
    left -= static_cast<std::size_t>(w);
  }
  ::flock(fd, LOCK_UN);
  ::close(fd);
  records_.insert_or_assign(r.n, r);
}

void Cache::store_sequence(const LSequence& s, std::uint64_t prime_bound) const {
  nlohmann::json j = {
      {"fingerprint", fingerprint_}, {"count", s.requested}, {"prime_bound", prime_bound}, {"sequence", to_json(s)}};
  std::string tmp = sequence_path() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidConfig("cannot write " + tmp);
    out << j.dump() << '\n';
    if (!out.flush()) throw InvalidConfig("cannot write " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, sequence_path(), ec);
  if (ec) throw InvalidConfig("cannot rename into " + sequence_path() + ": " + ec.message());
}

std::optional<LSequence> Cache::load_sequence(int count, std::uint64_t prime_bound) const {
  std::ifstream in(sequence_path());
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("fingerprint").get<std::string>() != fingerprint_) return std::nullopt;
    if (j.at("count").get<int>() != count || j.at("prime_bound").get<std::uint64_t>() != prime_bound) return std::nullopt;
    return sequence_from_json(j.at("sequence"));
  } catch (const std::exception&) {
    std::cerr << "warning: " << sequence_path() << " is unreadable, ignored\n";
    return std::nullopt;
  }
}

}  // namespace edsring

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "sonet/netio.hpp"

namespace sonet::detail {

struct ServiceOptions {
  std::size_t step_cap = 200;
  Bound bound{};
  std::string snapshot_dir;  // empty: snapshots are returned but not written
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

struct Session {
  explicit Session(NetDocument d) : doc(std::move(d)) {}

  std::string id;
  NetDocument doc;
  Marking initial;
  Marking current;
  std::vector<std::pair<Step, Marking>> history;  // step and the marking before it
  std::uint64_t version = 1;
  std::mutex mutex;

  StepSequence recorded() const;
};

/// The /api/v1/ HTTP surface, transport-free: callers hand in a method, a
/// request target (path plus optional query) and a body.
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  Response handle(const std::string& method, const std::string& target, const std::string& body);

  std::size_t session_count() const;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  std::string new_id();

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_ = 0;
};

}  // namespace sonet::detail

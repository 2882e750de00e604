#include "support/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace oracle {

namespace {

bool subset(const Ids& a, const Ids& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void add_arcs(Net& n, const std::vector<sonet::Arc>& arcs) {
  for (const auto& a : arcs) {
    if (n.transitions.count(a.to)) n.pre[a.to].insert(a.from);
    if (n.transitions.count(a.from)) n.post[a.from].insert(a.to);
  }
}

}  // namespace

Net Net::of(const sonet::RawNet& raw) {
  Net n;
  n.places.insert(raw.places.begin(), raw.places.end());
  n.transitions.insert(raw.transitions.begin(), raw.transitions.end());
  add_arcs(n, raw.arcs);
  return n;
}

Net Net::of(const sonet::RawCsaNet& raw) {
  Net n;
  for (const auto& c : raw.components) {
    n.places.insert(c.places.begin(), c.places.end());
    n.transitions.insert(c.transitions.begin(), c.transitions.end());
  }
  n.buffers.insert(raw.buffers.begin(), raw.buffers.end());
  n.places.insert(raw.buffers.begin(), raw.buffers.end());
  for (const auto& c : raw.components) add_arcs(n, c.arcs);
  add_arcs(n, raw.buffer_arcs);
  return n;
}

Ids Net::pre_of(const Ids& u) const {
  Ids out;
  for (const auto& t : u)
    if (auto it = pre.find(t); it != pre.end()) out.insert(it->second.begin(), it->second.end());
  return out;
}

Ids Net::post_of(const Ids& u) const {
  Ids out;
  for (const auto& t : u)
    if (auto it = post.find(t); it != post.end()) out.insert(it->second.begin(), it->second.end());
  return out;
}

Ids Net::initial() const {
  Ids produced = post_of(transitions);
  Ids out;
  for (const auto& p : places)
    if (!buffers.count(p) && !produced.count(p)) out.insert(p);
  return out;
}

Ids Net::final_places() const {
  Ids consumed = pre_of(transitions);
  Ids out;
  for (const auto& p : places)
    if (!consumed.count(p)) out.insert(p);
  return out;
}

std::vector<Ids> Net::steps(const Ids& m, bool singletons_only) const {
  const std::vector<std::string> ts(transitions.begin(), transitions.end());
  std::vector<Ids> out;
  const std::size_t n = ts.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    Ids u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) u.insert(ts[i]);
    if (singletons_only && u.size() != 1) continue;
    bool disjoint = true;
    std::size_t total = 0;
    for (const auto& t : u) total += pre.count(t) ? pre.at(t).size() : 0;
    if (pre_of(u).size() != total) disjoint = false;
    if (!disjoint) continue;
    Ids allowed = m;
    for (const auto& q : post_of(u))
      if (buffers.count(q)) allowed.insert(q);
    if (subset(pre_of(u), allowed)) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Ids Net::fire(const Ids& m, const Ids& u) const {
  Ids out = m;
  for (const auto& p : post_of(u)) out.insert(p);
  for (const auto& p : pre_of(u)) out.erase(p);
  return out;
}

std::set<Seq> Net::sseq(const Ids& m, bool singletons_only) const {
  std::set<Seq> out;
  Seq current;
  std::function<void(const Ids&)> go = [&](const Ids& marking) {
    out.insert(current);
    for (const auto& u : steps(marking, singletons_only)) {
      current.push_back(u);
      go(fire(marking, u));
      current.pop_back();
    }
  };
  go(m);
  return out;
}

std::set<Seq> Net::maxsseq(const Ids& m) const {
  std::set<Seq> out;
  for (const auto& s : sseq(m)) {
    Ids marking = m;
    for (const auto& u : s) marking = fire(marking, u);
    if (steps(marking).empty()) out.insert(s);
  }
  return out;
}

std::set<Ids> Net::reach(const Ids& m) const {
  std::set<Ids> seen{m};
  std::deque<Ids> work{m};
  while (!work.empty()) {
    const Ids x = work.front();
    work.pop_front();
    for (const auto& u : steps(x))
      if (seen.insert(fire(x, u)).second) work.push_back(fire(x, u));
  }
  return seen;
}

std::set<Ids> Net::finreach(const Ids& m) const {
  std::set<Ids> out;
  for (const auto& x : reach(m))
    if (steps(x).empty()) out.insert(x);
  return out;
}

std::set<Ids> scenario_sets(const Net& net) {
  const std::vector<std::string> ts(net.transitions.begin(), net.transitions.end());
  const Ids init = net.initial();
  std::set<Ids> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << ts.size()); ++mask) {
    Ids t;
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (mask >> i & 1) t.insert(ts[i]);
    Ids places = init;
    for (const auto& p : net.post_of(t)) places.insert(p);
    if (!subset(net.pre_of(t), places)) continue;
    bool ok = true;
    for (const auto& p : places) {
      int producers = 0, consumers = 0;
      for (const auto& x : t) {
        producers += net.post.count(x) && net.post.at(x).count(p);
        consumers += net.pre.count(x) && net.pre.at(x).count(p);
      }
      if (producers > 1 || consumers > 1) ok = false;
    }
    if (ok) out.insert(t);
  }
  return out;
}

std::set<Ids> maximal(const std::set<Ids>& sets) {
  std::set<Ids> out;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& o : sets)
      if (o != s && subset(s, o)) dominated = true;
    if (!dominated) out.insert(s);
  }
  return out;
}

std::set<std::pair<std::string, std::string>> closure(const Ids& universe,
                                                      const std::set<std::pair<std::string, std::string>>& pairs) {
  const std::vector<std::string> v(universe.begin(), universe.end());
  const std::size_t n = v.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  auto index = [&](const std::string& x) { return std::size_t(std::lower_bound(v.begin(), v.end(), x) - v.begin()); };
  for (const auto& [a, b] : pairs) r[index(a)][index(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.insert({v[i], v[j]});
  return out;
}

std::set<Ids> phase(const sonet::RawBsaNet& raw, std::size_t component, const std::string& p) {
  const Net lower = Net::of(raw.lower.components.at(component));
  const Net upper = Net::of(raw.upper.components.at(component));
  auto beta = [&](const Ids& ps) {
    Ids out;
    for (const auto& [r, q] : raw.beta)
      if (ps.count(q)) out.insert(r);
    return out;
  };
  const Ids start = beta({p});
  std::set<Ids> out{start};
  const auto from_start = lower.reach(start);
  for (const auto& t : upper.transitions) {
    if (!upper.pre.at(t).count(p)) continue;
    const Ids target = beta(upper.post.at(t));
    for (const auto& m : from_start)
      if (lower.reach(m).count(target)) out.insert(m);
  }
  return out;
}

sonet::RawNet Generator::net(Shape shape, int max_transitions) {
  sonet::RawNet raw;
  std::map<std::string, int> consumers;
  int places = 0;
  auto new_place = [&] {
    const std::string p = "p" + std::to_string(places++);
    raw.places.push_back(p);
    consumers[p] = 0;
    return p;
  };
  const int initial = uniform(1, 3);
  for (int i = 0; i < initial; ++i) new_place();
  const int n = uniform(1, max_transitions);
  for (int i = 0; i < n; ++i) {
    const std::string t = "t" + std::to_string(i);
    raw.transitions.push_back(t);
    std::vector<std::string> candidates;
    for (const auto& p : raw.places)
      if (shape != Shape::Occurrence || consumers[p] == 0) candidates.push_back(p);
    if (candidates.empty()) candidates.push_back(new_place());
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const int pre = std::min<int>(uniform(0, 9) < 7 ? 1 : 2, int(candidates.size()));
    for (int k = 0; k < pre; ++k) {
      raw.arcs.push_back({candidates[k], t});
      ++consumers[candidates[k]];
    }
    const int post = uniform(1, 2);
    for (int k = 0; k < post; ++k) {
      std::string target;
      if (shape == Shape::General && uniform(0, 9) < 3) {
        std::vector<std::string> open;
        for (const auto& p : raw.places) {
          const bool produced_here = std::any_of(raw.arcs.begin(), raw.arcs.end(),
                                                 [&](const sonet::Arc& a) { return a.from == t && a.to == p; });
          if (consumers[p] == 0 && !produced_here) open.push_back(p);
        }
        if (!open.empty()) target = open[std::size_t(uniform(0, int(open.size()) - 1))];
      }
      if (target.empty()) target = new_place();
      raw.arcs.push_back({t, target});
    }
  }
  if (uniform(0, 4) == 0) new_place();
  return raw;
}

std::string show(const Ids& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

std::string show(const Seq& s) {
  std::string out;
  for (const auto& u : s) out += show(u);
  return out.empty() ? "λ" : out;
}

}  // namespace oracle

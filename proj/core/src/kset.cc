// Copyright 2026 The ksubmax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ksubmax/kset.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace ksubmax {

GroundSet::GroundSet(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw std::invalid_argument("ground set needs n >= 1");
  if (k < 1) throw std::invalid_argument("ground set needs k >= 1");
}

std::uint64_t GroundSet::NumKSets() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  const auto base = static_cast<std::uint64_t>(k_) + 1;
  for (int i = 0; i < n_; ++i) {
    if (count > kMax / base) return kMax;
    count *= base;
  }
  return count;
}

CharVector::CharVector(GroundSet ground)
    : ground_(ground), bits_(static_cast<std::size_t>(ground.dim()), 0) {}

CharVector::CharVector(GroundSet ground, std::vector<std::uint8_t> bits)
    : ground_(ground), bits_(std::move(bits)) {
  if (bits_.size() != static_cast<std::size_t>(ground_.dim())) {
    throw DimensionError("characteristic vector length differs from k*n");
  }
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("characteristic vector is not 0/1");
  }
}

KSet::KSet(GroundSet ground)
    : ground_(ground), labels_(static_cast<std::size_t>(ground.n()), 0) {}

KSet::KSet(GroundSet ground, std::vector<int> labels)
    : ground_(ground), labels_(std::move(labels)) {
  if (labels_.size() != static_cast<std::size_t>(ground_.n())) {
    throw DimensionError("label vector length differs from n");
  }
  for (int label : labels_) {
    if (label < 0 || label > ground_.k()) {
      throw std::invalid_argument("label outside [0, k]");
    }
  }
}

void KSet::Assign(int i, int q) {
  if (i < 0 || i >= n()) throw std::out_of_range("element index");
  if (q < 0 || q > k()) throw std::out_of_range("subset index");
  labels_[i] = q;
}

KSet KSet::With(int i, int q) const {
  KSet copy = *this;
  copy.Assign(i, q);
  return copy;
}

int KSet::SubsetSize(int q) const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), q));
}

int KSet::TotalSize() const {
  return n() - static_cast<int>(std::count(labels_.begin(), labels_.end(), 0));
}

std::vector<int> KSet::Subset(int q) const {
  std::vector<int> members;
  for (int i = 0; i < n(); ++i) {
    if (labels_[i] == q) members.push_back(i);
  }
  return members;
}

std::uint64_t KSet::Index() const {
  const auto base = static_cast<std::uint64_t>(k()) + 1;
  std::uint64_t index = 0;
  for (int i = n() - 1; i >= 0; --i) {
    index = index * base + static_cast<std::uint64_t>(labels_[i]);
  }
  return index;
}

KSet KSet::FromIndex(GroundSet ground, std::uint64_t index) {
  const auto base = static_cast<std::uint64_t>(ground.k()) + 1;
  std::vector<int> labels(static_cast<std::size_t>(ground.n()));
  for (auto& label : labels) {
    label = static_cast<int>(index % base);
    index /= base;
  }
  return KSet(ground, std::move(labels));
}

CharVector ToCharVector(const KSet& s) {
  CharVector x(s.ground());
  for (int i = 0; i < s.n(); ++i) {
    if (s.assigned(i)) x.set(s.label(i), i, true);
  }
  return x;
}

KSet FromCharVector(const CharVector& x) {
  const GroundSet& g = x.ground();
  KSet s(g);
  for (int i = 0; i < g.n(); ++i) {
    for (int q = 1; q <= g.k(); ++q) {
      if (!x.at(q, i)) continue;
      if (s.assigned(i)) {
        throw std::invalid_argument("element " + std::to_string(i + 1) +
                                    " is in more than one subset");
      }
      s.Assign(i, q);
    }
  }
  return s;
}

namespace {

void RequireSameGround(const KSet& a, const KSet& b) {
  if (!(a.ground() == b.ground())) {
    throw DimensionError("k-sets over different ground sets");
  }
}

}  // namespace

KSet Meet(const KSet& a, const KSet& b) {
  RequireSameGround(a, b);
  KSet out(a.ground());
  for (int i = 0; i < a.n(); ++i) {
    if (a.label(i) == b.label(i)) out.Assign(i, a.label(i));
  }
  return out;
}

KSet Join(const KSet& a, const KSet& b) {
  RequireSameGround(a, b);
  KSet out(a.ground());
  for (int i = 0; i < a.n(); ++i) {
    const int la = a.label(i);
    const int lb = b.label(i);
    if (la == 0) {
      out.Assign(i, lb);
    } else if (lb == 0 || lb == la) {
      out.Assign(i, la);
    }
    // la != lb, both nonzero: claimed by two unions, dropped.
  }
  return out;
}

bool IsPartition(const KSet& s) {
  for (int i = 0; i < s.n(); ++i) {
    if (!s.assigned(i)) return false;
  }
  return true;
}

std::string ToString(const KSet& s) {
  std::ostringstream out;
  out << '(';
  for (int q = 1; q <= s.k(); ++q) {
    if (q > 1) out << ',';
    out << '{';
    bool first = true;
    for (int i : s.Subset(q)) {
      if (!first) out << ',';
      out << i + 1;
      first = false;
    }
    out << '}';
  }
  out << ')';
  return out.str();
}

KSet ParseKSet(std::string_view text, int n) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad k-set '" + std::string(text) +
                                 "': " + why);
  };
  if (compact.size() < 2 || compact.front() != '(' || compact.back() != ')') {
    throw fail("expected parentheses");
  }
  std::vector<std::vector<int>> groups;
  std::size_t pos = 1;
  const std::size_t end = compact.size() - 1;
  while (pos < end) {
    if (compact[pos] != '{') throw fail("expected '{'");
    const std::size_t close = compact.find('}', pos);
    if (close == std::string::npos || close > end) throw fail("unclosed '{'");
    std::vector<int> members;
    std::string body = compact.substr(pos + 1, close - pos - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw fail("empty element");
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw fail("element is not an integer");
      }
      if (used != item.size()) throw fail("element is not an integer");
      if (value < 1 || value > n) throw fail("element outside [1, n]");
      members.push_back(value - 1);
    }
    groups.push_back(std::move(members));
    pos = close + 1;
    if (pos < end) {
      if (compact[pos] != ',') throw fail("expected ','");
      ++pos;
    }
  }
  if (groups.empty()) throw fail("no subsets");
  KSet s(GroundSet(n, static_cast<int>(groups.size())));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int i : groups[g]) {
      if (s.assigned(i)) throw fail("subsets are not disjoint");
      s.Assign(i, static_cast<int>(g) + 1);
    }
  }
  return s;
}

void ForEachKSet(const GroundSet& ground,
                 const std::function<void(const KSet&)>& visit) {
  KSet s(ground);
  while (true) {
    visit(s);
    int i = 0;
    while (i < ground.n() && s.label(i) == ground.k()) {
      s.Assign(i, 0);
      ++i;
    }
    if (i == ground.n()) return;
    s.Assign(i, s.label(i) + 1);
  }
}

namespace {

bool VisitWithin(KSet& s, int i, std::vector<int>& room,
                 const std::function<bool(const KSet&)>& visit) {
  if (i == s.n()) return visit(s);
  for (int q = 0; q <= s.k(); ++q) {
    if (q > 0 && room[q - 1] == 0) continue;
    s.Assign(i, q);
    if (q > 0) --room[q - 1];
    const bool keep_going = VisitWithin(s, i + 1, room, visit);
    if (q > 0) ++room[q - 1];
    if (!keep_going) {
      s.Assign(i, 0);
      return false;
    }
  }
  s.Assign(i, 0);
  return true;
}

}  // namespace

void ForEachKSetWithin(const GroundSet& ground, std::span<const int> caps,
                       const std::function<bool(const KSet&)>& visit) {
  if (caps.size() != static_cast<std::size_t>(ground.k())) {
    throw DimensionError("one cap per subset expected");
  }
  std::vector<int> room(caps.begin(), caps.end());
  for (int& r : room) r = std::clamp(r, 0, ground.n());
  KSet s(ground);
  VisitWithin(s, 0, room, visit);
}

}  // namespace ksubmax

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

// Ground sets and k-sets.
//
// A k-set is a k-tuple (S_1, ..., S_k) of pairwise disjoint subsets of the
// ground set N = {1, ..., n}. It is stored as one label per element: label 0
// means "not selected", label q in [1, k] means "element is in S_q". This
// makes disjointness structural. The 0/1 characteristic vector x with
// x_i^q = 1 iff i in S_q is a derived view used by the MILP layer.
//
// Elements are 0-based everywhere in the library; the textual notation
// "({1,3},{2},{})" is 1-based.

#ifndef KSUBMAX_KSET_H_
#define KSUBMAX_KSET_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ksubmax {

// Thrown when two objects built over different ground sets are combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GroundSet {
 public:
  // Requires n >= 1 and k >= 1.
  GroundSet(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  // Length of the characteristic vector, k * n.
  int dim() const { return n_ * k_; }
  // Column of x_i^q in the characteristic vector; q is 1-based, i 0-based.
  int VarIndex(int q, int i) const { return (q - 1) * n_ + i; }

  // Number of k-sets, (k+1)^n, saturating at UINT64_MAX.
  std::uint64_t NumKSets() const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int n_;
  int k_;
};

class KSet;

// 0/1 vector of length k*n indexed by GroundSet::VarIndex.
class CharVector {
 public:
  explicit CharVector(GroundSet ground);
  CharVector(GroundSet ground, std::vector<std::uint8_t> bits);

  const GroundSet& ground() const { return ground_; }
  std::uint8_t at(int q, int i) const { return bits_[ground_.VarIndex(q, i)]; }
  void set(int q, int i, bool value) {
    bits_[ground_.VarIndex(q, i)] = value ? 1 : 0;
  }
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const CharVector&, const CharVector&) = default;

 private:
  GroundSet ground_;
  std::vector<std::uint8_t> bits_;
};

class KSet {
 public:
  // The empty k-set (all labels 0).
  explicit KSet(GroundSet ground);
  // Labels in {0, ..., k}; throws std::invalid_argument otherwise.
  KSet(GroundSet ground, std::vector<int> labels);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n(); }
  int k() const { return ground_.k(); }

  int label(int i) const { return labels_[i]; }
  std::span<const int> labels() const { return labels_; }
  bool assigned(int i) const { return labels_[i] != 0; }
  bool Contains(int q, int i) const { return labels_[i] == q; }

  // Sets the label of element i (0 removes it from every subset).
  void Assign(int i, int q);
  // Copy of *this with element i placed in S_q.
  KSet With(int i, int q) const;

  // |S_q| for q in [1, k].
  int SubsetSize(int q) const;
  // Number of assigned elements, |S_1| + ... + |S_k|.
  int TotalSize() const;
  // 0-based members of S_q in increasing order.
  std::vector<int> Subset(int q) const;
  bool IsEmpty() const { return TotalSize() == 0; }

  // Position of this k-set in the base-(k+1) enumeration of all k-sets,
  // element 0 being the least significant digit.
  std::uint64_t Index() const;
  static KSet FromIndex(GroundSet ground, std::uint64_t index);

  friend bool operator==(const KSet&, const KSet&) = default;
  // Lexicographic on the label vector.
  friend bool operator<(const KSet& a, const KSet& b) {
    return a.labels_ < b.labels_;
  }

 private:
  GroundSet ground_;
  std::vector<int> labels_;
};

CharVector ToCharVector(const KSet& s);
// Throws std::invalid_argument if some element has sum_q x_i^q > 1.
KSet FromCharVector(const CharVector& x);

// Componentwise intersection (X_1 n Y_1, ..., X_k n Y_k).
KSet Meet(const KSet& a, const KSet& b);
// Componentwise union with every element claimed by two different subsets
// dropped.
KSet Join(const KSet& a, const KSet& b);
// True iff every element is assigned.
bool IsPartition(const KSet& s);

// "({1,3},{2},{})", 1-based element names.
std::string ToString(const KSet& s);
// Inverse of ToString; k is the number of brace groups.
KSet ParseKSet(std::string_view text, int n);

// Visits all (k+1)^n k-sets in increasing Index() order.
void ForEachKSet(const GroundSet& ground,
                 const std::function<void(const KSet&)>& visit);

// Visits every k-set with |S_q| <= caps[q-1] in lexicographic order of the
// label vector. Assignments exceeding a cap are pruned before they are
// completed. `visit` returns false to stop the enumeration early.
void ForEachKSetWithin(const GroundSet& ground, std::span<const int> caps,
                       const std::function<bool(const KSet&)>& visit);

}  // namespace ksubmax

#endif  // KSUBMAX_KSET_H_

#pragma once

// Explicit finite abelian groups: element orders, subgroups, quotients and
// invariant-factor decomposition by brute force. Sized for class groups of
// desk-scale discriminants.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "fermat3/error.hpp"

namespace fermat3 {

template <class T>
struct GroupStructure {
  /// d_1 | d_2 | ... | d_k, all > 1.
  std::vector<std::int64_t> invariants;
  /// generators[i] has order invariants[i]; together they give a direct product decomposition.
  std::vector<T> generators;

  std::int64_t order() const {
    std::int64_t n = 1;
    for (auto d : invariants) n *= d;
    return n;
  }
};

/// T needs operator< and operator==. Elements are canonical representatives.
template <class T>
class FiniteAbelianGroup {
 public:
  using Op = std::function<T(const T&, const T&)>;
  using Canon = std::function<T(const T&)>;

  FiniteAbelianGroup(std::vector<T> elements, T identity, Op op, Canon canon = {})
      : elements_(std::move(elements)), identity_(std::move(identity)), op_(std::move(op)), canon_(std::move(canon)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (!canon_) canon_ = [](const T& x) { return x; };
  }

  std::int64_t size() const { return static_cast<std::int64_t>(elements_.size()); }
  const std::vector<T>& elements() const { return elements_; }
  const T& identity() const { return identity_; }

  T multiply(const T& a, const T& b) const { return op_(a, b); }

  /// Representative of an element of the parent group (identity map for a base group).
  T project(const T& x) const { return canon_(x); }

  T power(const T& x, std::int64_t k) const {
    if (k < 0) return power(inverse(x), -k);
    T result = identity_;
    T base = x;
    while (k) {
      if (k & 1) result = op_(result, base);
      base = op_(base, base);
      k >>= 1;
    }
    return result;
  }

  std::int64_t order(const T& x) const {
    T y = x;
    std::int64_t n = 1;
    while (!(y == identity_)) {
      y = op_(y, x);
      if (++n > size()) fail(ErrorKind::InternalInconsistency, "element order exceeds group order");
    }
    return n;
  }

  T inverse(const T& x) const { return power(x, order(x) - 1); }

  /// Subgroup generated by gens, sorted.
  std::vector<T> span(const std::vector<T>& gens) const {
    std::set<T> members{identity_};
    std::vector<T> frontier{identity_};
    while (!frontier.empty()) {
      std::vector<T> next;
      for (const auto& x : frontier) {
        for (const auto& g : gens) {
          T y = op_(x, g);
          if (members.insert(y).second) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    return {members.begin(), members.end()};
  }

  /// G / <gens>; elements are the smallest members of each coset.
  FiniteAbelianGroup quotient(const std::vector<T>& gens) const {
    std::vector<T> h = span(gens);
    auto rep = std::make_shared<std::map<T, T>>();
    std::vector<T> reps;
    for (const auto& x : elements_) {
      if (rep->count(x)) continue;
      std::vector<T> coset;
      for (const auto& y : h) coset.push_back(op_(x, y));
      T m = *std::min_element(coset.begin(), coset.end());
      for (const auto& y : coset) (*rep)[y] = m;
      reps.push_back(m);
    }
    Op parent_op = op_;
    Canon parent_canon = canon_;
    auto lookup = [rep](const T& x) {
      auto it = rep->find(x);
      if (it == rep->end()) fail(ErrorKind::InternalInconsistency, "element outside the group");
      return it->second;
    };
    Op op = [parent_op, lookup](const T& a, const T& b) { return lookup(parent_op(a, b)); };
    Canon canon = [parent_canon, lookup](const T& x) { return lookup(parent_canon(x)); };
    return FiniteAbelianGroup(std::move(reps), lookup(identity_), std::move(op), std::move(canon));
  }

  GroupStructure<T> structure() const {
    const std::int64_t n = size();
    // Cyclic q-primary pieces, largest first per prime.
    std::vector<std::vector<std::pair<std::int64_t, T>>> primary;
    std::int64_t m = n;
    for (std::int64_t q = 2; m > 1; ++q) {
      if (q * q > m) q = m;
      if (m % q) continue;
      std::int64_t qk = 1;
      while (m % q == 0) {
        m /= q;
        qk *= q;
      }
      primary.push_back(primary_basis(n / qk));
    }
    GroupStructure<T> out;
    std::size_t rank = 0;
    for (const auto& part : primary) rank = std::max(rank, part.size());
    for (std::size_t i = 0; i < rank; ++i) {
      std::int64_t d = 1;
      T g = identity_;
      for (const auto& part : primary) {
        if (i < part.size()) {
          d *= part[i].first;
          g = op_(g, part[i].second);
        }
      }
      out.invariants.push_back(d);
      out.generators.push_back(g);
    }
    std::reverse(out.invariants.begin(), out.invariants.end());
    std::reverse(out.generators.begin(), out.generators.end());
    return out;
  }

 private:
  // Basis of the q-Sylow subgroup as (order, generator), orders descending.
  std::vector<std::pair<std::int64_t, T>> primary_basis(std::int64_t cofactor) const {
    std::set<T> sylow_set;
    for (const auto& x : elements_) sylow_set.insert(power(x, cofactor));
    std::vector<T> sylow(sylow_set.begin(), sylow_set.end());

    std::vector<std::pair<std::int64_t, T>> basis;
    std::set<T> h{identity_};
    while (h.size() < sylow.size()) {
      // Element of largest order modulo h.
      std::int64_t best_order = 0;
      T best = identity_;
      for (const auto& x : sylow) {
        std::int64_t k = 1;
        T y = x;
        while (!h.count(y)) {
          y = op_(y, x);
          ++k;
        }
        if (k > best_order) {
          best_order = k;
          best = x;
        }
      }
      // Adjust by an element of h so the order in G equals the order modulo h.
      T target = power(best, best_order);
      T chosen = best;
      bool found = false;
      for (const auto& y : h) {
        if (power(y, best_order) == target) {
          chosen = op_(best, power(y, order(y) - 1));
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorKind::InternalInconsistency, "no complement for a maximal cyclic factor");
      basis.emplace_back(best_order, chosen);
      std::set<T> grown;
      T g = identity_;
      for (std::int64_t i = 0; i < best_order; ++i) {
        for (const auto& y : h) grown.insert(op_(g, y));
        g = op_(g, chosen);
      }
      h = std::move(grown);
    }
    return basis;
  }

  std::vector<T> elements_;
  T identity_;
  Op op_;
  Canon canon_;
};

}  // namespace fermat3

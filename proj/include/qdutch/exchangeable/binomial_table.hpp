#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "qdutch/rational.hpp"

namespace qdutch::exchangeable {

/// Immutable Pascal triangle rows 0..size()-1.
class PascalRows {
 public:
  using Row = std::vector<BigInt>;

  std::size_t size() const noexcept { return rows_.size(); }
  const BigInt& operator()(std::size_t n, std::size_t k) const { return (*rows_[n])[k]; }

 private:
  friend class BinomialTable;
  std::vector<std::shared_ptr<const Row>> rows_;
};

/// Memoized big-integer binomials. Growth happens under a lock and publishes
/// a fresh immutable snapshot; snapshots already handed out stay valid.
class BinomialTable {
 public:
  /// Snapshot holding at least rows 0..n.
  std::shared_ptr<const PascalRows> rows_through(std::size_t n);

  static BinomialTable& shared();

 private:
  std::mutex mutex_;
  std::shared_ptr<const PascalRows> snapshot_ = std::make_shared<PascalRows>();
};

}  // namespace qdutch::exchangeable

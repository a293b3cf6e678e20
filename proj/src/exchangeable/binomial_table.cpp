#include "qdutch/exchangeable/binomial_table.hpp"

namespace qdutch::exchangeable {

std::shared_ptr<const PascalRows> BinomialTable::rows_through(std::size_t n) {
  std::lock_guard lock(mutex_);
  if (snapshot_->size() > n) return snapshot_;

  auto next = std::make_shared<PascalRows>(*snapshot_);
  while (next->rows_.size() <= n) {
    const std::size_t m = next->rows_.size();
    auto row = std::make_shared<PascalRows::Row>(m + 1);
    (*row)[0] = 1;
    (*row)[m] = 1;
    if (m > 0) {
      const auto& prev = *next->rows_[m - 1];
      for (std::size_t k = 1; k < m; ++k) (*row)[k] = prev[k - 1] + prev[k];
    }
    next->rows_.push_back(std::move(row));
  }
  snapshot_ = std::move(next);
  return snapshot_;
}

BinomialTable& BinomialTable::shared() {
  static BinomialTable table;
  return table;
}

}  // namespace qdutch::exchangeable

#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "bousfield/error.hpp"

namespace bousfield {

/// Coordinate-list matrix kept sorted by (row, col). Zero values are never
/// stored; T must provide is_zero().
template <typename T>
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    T value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t nnz() const noexcept { return entries_.size(); }

  const T* find(std::size_t r, std::size_t c) const {
    auto it = lower(r, c);
    if (it != entries_.end() && it->row == r && it->col == c) return &it->value;
    return nullptr;
  }

  void set(std::size_t r, std::size_t c, T value) {
    if (r >= rows_ || c >= cols_) throw Error(ErrorKind::kInvalidArgument, "sparse index out of range");
    auto it = lower(r, c);
    const bool present = it != entries_.end() && it->row == r && it->col == c;
    if (value.is_zero()) {
      if (present) entries_.erase(it);
    } else if (present) {
      it->value = std::move(value);
    } else {
      entries_.insert(it, Entry{r, c, std::move(value)});
    }
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      const auto& x = a.entries_[i];
      const auto& y = b.entries_[i];
      if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
    }
    return true;
  }

 private:
  typename std::vector<Entry>::iterator lower(std::size_t r, std::size_t c) {
    return std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c), cmp);
  }
  typename std::vector<Entry>::const_iterator lower(std::size_t r, std::size_t c) const {
    return std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c), cmp);
  }
  static bool cmp(const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
    return e.row != key.first ? e.row < key.first : e.col < key.second;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace bousfield

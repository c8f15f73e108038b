#include "ddinet/mat.hpp"

#include <algorithm>
#include <tuple>

namespace ddinet {

Csr Csr::transposed() const {
  Csr t(cols, rows);
  std::vector<std::size_t> count(cols, 0);
  for (std::size_t e : indices) ++count[e];
  t.indptr.assign(cols + 1, 0);
  for (std::size_t j = 0; j < cols; ++j) t.indptr[j + 1] = t.indptr[j] + count[j];
  t.indices.resize(nnz());
  t.values.resize(nnz());
  std::vector<std::size_t> fill(t.indptr.begin(), t.indptr.end() - 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t e = indptr[i]; e < indptr[i + 1]; ++e) {
      std::size_t j = indices[e];
      t.indices[fill[j]] = i;
      t.values[fill[j]] = values[e];
      ++fill[j];
    }
  }
  return t;
}

Csr Csr::from_triplets(std::size_t r, std::size_t c,
                       std::vector<std::tuple<std::size_t, std::size_t, double>> trip) {
  std::sort(trip.begin(), trip.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  Csr s(r, c);
  std::size_t i = 0;
  while (i < trip.size()) {
    std::size_t j = i + 1;
    double v = std::get<2>(trip[i]);
    while (j < trip.size() && std::get<0>(trip[j]) == std::get<0>(trip[i]) &&
           std::get<1>(trip[j]) == std::get<1>(trip[i])) {
      v += std::get<2>(trip[j]);
      ++j;
    }
    s.indices.push_back(std::get<1>(trip[i]));
    s.values.push_back(v);
    ++s.indptr[std::get<0>(trip[i]) + 1];
    i = j;
  }
  for (std::size_t k = 0; k < r; ++k) s.indptr[k + 1] += s.indptr[k];
  return s;
}

}  // namespace ddinet

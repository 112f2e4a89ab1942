#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/kernels/series_kernel.hpp"
#include "wfl/quadrature.hpp"
#include "wfl/wick.hpp"

namespace wfl::kernels {

namespace {

using cplx = std::complex<double>;

struct WorkItem {
  int degree;
  int first;  // r for pair (0,1)
};

struct ItemResult {
  CompensatedComplexSum sum;
  std::uint64_t terms = 0;
  std::uint64_t violations = 0;
};

class Enumerator {
 public:
  Enumerator(const SeriesProblem& p, const std::vector<std::vector<cplx>>& powers)
      : p_(p), powers_(powers), n_(p.n), E_(ContractionMatrix::pair_count(p.n)) {
    pair_i_.resize(E_);
    pair_j_.resize(E_);
    completes_.resize(E_);
    int e = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j, ++e) {
        pair_i_[e] = i;
        pair_j_[e] = j;
      }
    for (int v = 0; v < n_; ++v) {
      const int last = v < n_ - 1 ? ContractionMatrix::pair_index(n_, v, n_ - 1) : E_ - 1;
      completes_[last].push_back(v);
    }
    counts_.assign(n_, 0);
  }

  void run(const WorkItem& item, ItemResult& out) {
    std::fill(counts_.begin(), counts_.end(), 0);
    degree_ = item.degree;
    out_ = &out;
    if (E_ == 1) {
      assign_and_descend(0, item.degree, 0, cplx{1.0}, 1.0, 0);
    } else {
      assign_and_descend(0, item.first, item.degree - item.first, cplx{1.0}, 1.0, 0);
    }
  }

 private:
  // Sets entry e to r, folds in completed vertices, then recurses on e + 1.
  void assign_and_descend(int e, int r, int remaining, cplx prod, double dprod, int crossings) {
    const int i = pair_i_[e];
    const int j = pair_j_[e];
    counts_[i] += r;
    counts_[j] += r;
    if (r > 0) prod *= powers_[e][r];
    if (r > 0 && p_.cross_split > 0 && i < p_.cross_split && j >= p_.cross_split) ++crossings;
    for (int v : completes_[e]) dprod *= p_.coefficients[counts_[v]];
    if (dprod != 0.0) {
      if (e == E_ - 1) {
        emit(prod * dprod, crossings);
      } else if (e + 1 == E_ - 1) {
        assign_and_descend(e + 1, remaining, 0, prod, dprod, crossings);
      } else {
        for (int next = 0; next <= remaining; ++next) {
          assign_and_descend(e + 1, next, remaining - next, prod, dprod, crossings);
        }
      }
    }
    counts_[i] -= r;
    counts_[j] -= r;
  }

  void emit(cplx term, int crossings) {
    if (p_.cross_split > 0 && crossings == 0) return;
    ++out_->terms;
    if (p_.check_term_bound) {
      const double bound = p_.term_bound_prefactor * std::pow(p_.term_bound_ratio, degree_);
      if (std::abs(term) > bound * (1.0 + 1e-10) + 1e-300) ++out_->violations;
    }
    out_->sum.add(term);
  }

  const SeriesProblem& p_;
  const std::vector<std::vector<cplx>>& powers_;
  int n_;
  int E_;
  int degree_ = 0;
  ItemResult* out_ = nullptr;
  std::vector<int> pair_i_, pair_j_, counts_;
  std::vector<std::vector<int>> completes_;
};

}  // namespace

SeriesSum series_sum_omp(const SeriesProblem& problem) {
  const int E = ContractionMatrix::pair_count(problem.n);
  if (problem.n < 2) throw DomainError("series: need n >= 2");
  if (static_cast<int>(problem.pair_values.size()) != E) throw DomainError("series: wrong number of pair values");
  if (static_cast<int>(problem.coefficients.size()) <= problem.cutoff) {
    throw DomainError("series: coefficients do not cover the cutoff degree");
  }
  const int K = problem.cutoff;

  // powers[e][r] = w_e^r / r!
  std::vector<std::vector<cplx>> powers(E, std::vector<cplx>(K + 1));
  for (int e = 0; e < E; ++e) {
    powers[e][0] = 1.0;
    for (int r = 1; r <= K; ++r) powers[e][r] = powers[e][r - 1] * problem.pair_values[e] / static_cast<double>(r);
  }

  std::vector<WorkItem> items;
  for (int deg = 0; deg <= K; ++deg) {
    if (E == 1) {
      items.push_back({deg, deg});
    } else {
      for (int a = 0; a <= deg; ++a) items.push_back({deg, a});
    }
  }
  std::vector<ItemResult> results(items.size());
  const auto count = static_cast<long>(items.size());

#pragma omp parallel
  {
    Enumerator walker(problem, powers);
#pragma omp for schedule(dynamic, 1)
    for (long idx = 0; idx < count; ++idx) walker.run(items[idx], results[idx]);
  }

  SeriesSum out;
  out.degree_sums.assign(K + 1, {});
  std::size_t idx = 0;
  CompensatedComplexSum total;
  for (int deg = 0; deg <= K; ++deg) {
    CompensatedComplexSum block;
    while (idx < items.size() && items[idx].degree == deg) {
      block.add(results[idx].sum.value());
      out.terms += results[idx].terms;
      out.term_bound_violations += results[idx].violations;
      ++idx;
    }
    out.degree_sums[deg] = block.value();
    total.add(out.degree_sums[deg]);
  }
  out.value = total.value();
  return out;
}

}  // namespace wfl::kernels

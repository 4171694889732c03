#include "moikit/moi.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "moikit/error.hpp"
#include "moikit/rng.hpp"
#include "moikit/schatten.hpp"

namespace moikit {

namespace {

Complex i_power(int m) {
  switch (m % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

void require_arity(const MoiSymbol& symbol, int k) {
  if (symbol.arity() != k + 1) {
    throw Error(ErrorCode::ArityMismatch, "symbol arity " + std::to_string(symbol.arity()) +
                                              " does not match " + std::to_string(k + 1) + " decompositions");
  }
}

}  // namespace

// ------------------------------------------------------------------ MoiSymbol

MoiSymbol::MoiSymbol(int arity, Evaluator evaluator, bool symmetric)
    : arity_(arity), evaluator_(std::move(evaluator)), symmetric_(symmetric) {
  if (arity < 2) throw Error(ErrorCode::ArityMismatch, "MOI symbols need arity >= 2");
  if (!evaluator_) throw Error(ErrorCode::InvalidArgument, "MOI symbol needs an evaluator");
}

MoiSymbol MoiSymbol::constant(int arity, Complex value) {
  MoiSymbol s(arity, [value](std::span<const double>) { return value; }, true);
  std::vector<ScalarFunction> ones(static_cast<std::size_t>(arity), ScalarFunction(Polynomial({1.0})));
  s.separated_ = std::vector<SeparatedTerm>{{value, std::move(ones)}};
  return s;
}

MoiSymbol MoiSymbol::divided_difference(ScalarFunction f, int k, DividedDifferenceOptions options) {
  if (k < 1) throw Error(ErrorCode::ArityMismatch, "MOI symbols need k >= 1");
  MoiSymbol s(
      k + 1,
      [f, options](std::span<const double> x) {
        return moikit::divided_difference(f, NodeTuple(std::vector<double>(x.begin(), x.end())), options);
      },
      true);
  s.source_ = std::move(f);
  return s;
}

MoiSymbol MoiSymbol::separated(int arity, std::vector<SeparatedTerm> terms) {
  for (const auto& t : terms) {
    if (static_cast<int>(t.factors.size()) != arity)
      throw Error(ErrorCode::ArityMismatch, "separated term has the wrong number of factors");
  }
  auto shared = std::make_shared<const std::vector<SeparatedTerm>>(terms);
  MoiSymbol s(arity, [shared](std::span<const double> x) {
    Complex acc = 0.0;
    for (const auto& t : *shared) {
      Complex prod = t.weight;
      for (std::size_t j = 0; j < x.size(); ++j) prod *= t.factors[j](x[j]);
      acc += prod;
    }
    return acc;
  });
  s.separated_ = std::move(terms);
  return s;
}

Complex MoiSymbol::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != arity_) throw Error(ErrorCode::ArityMismatch, "wrong number of eigenvalues");
  return evaluator_(x);
}

MoiSymbol& MoiSymbol::set_separated_form(std::vector<SeparatedTerm> terms) {
  for (const auto& t : terms) {
    if (static_cast<int>(t.factors.size()) != arity_)
      throw Error(ErrorCode::ArityMismatch, "separated term has the wrong number of factors");
  }
  separated_ = std::move(terms);
  return *this;
}

double MoiSymbol::separated_form_mismatch(std::span<const std::vector<double>> samples) const {
  if (!separated_) return 0.0;
  double worst = 0.0;
  for (const auto& x : samples) {
    Complex recombined = 0.0;
    for (const auto& t : *separated_) {
      Complex prod = t.weight;
      for (std::size_t j = 0; j < x.size(); ++j) prod *= t.factors[j](x[j]);
      recombined += prod;
    }
    worst = std::max(worst, std::abs((*this)(x) - recombined));
  }
  return worst;
}

// ---------------------------------------------------------------- MoiOperands

MoiOperands::MoiOperands(std::vector<DecompositionRef> decomps, std::vector<Matrix> middles)
    : decomps_(std::move(decomps)), middles_(std::move(middles)) {
  if (middles_.empty()) throw Error(ErrorCode::ArityMismatch, "MOIs need k >= 1 middle matrices");
  if (decomps_.size() != middles_.size() + 1) {
    throw Error(ErrorCode::ArityMismatch, std::to_string(decomps_.size()) + " decompositions for " +
                                              std::to_string(middles_.size()) + " middle matrices");
  }
  const std::size_t n = decomps_.front().get().dimension();
  for (const auto& d : decomps_)
    if (d.get().dimension() != n) throw Error(ErrorCode::DimensionMismatch, "decompositions differ in dimension");
  for (const auto& b : middles_)
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "middle matrix dimension differs");
}

MoiOperands MoiOperands::repeated(const SpectralDecomposition& d, std::vector<Matrix> middles) {
  std::vector<DecompositionRef> decomps(middles.size() + 1, std::cref(d));
  return MoiOperands(std::move(decomps), std::move(middles));
}

MoiOperands MoiOperands::with_middles(std::vector<Matrix> middles) const {
  return MoiOperands(decomps_, std::move(middles));
}

// ----------------------------------------------------------------- SymbolGrid

SymbolGrid::SymbolGrid(std::vector<std::size_t> extents, std::vector<Complex> values)
    : extents_(std::move(extents)), values_(std::move(values)) {
  std::size_t total = 1;
  for (auto e : extents_) total *= e;
  if (total != values_.size()) throw Error(ErrorCode::DimensionMismatch, "grid extents do not match value count");
}

double SymbolGrid::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SymbolGrid::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& v : values_) s += std::abs(v);
  return s;
}

SymbolGrid evaluate_symbol_grid(const MoiSymbol& symbol, std::span<const MoiOperands::DecompositionRef> decomps,
                                const MoiOptions& options) {
  if (static_cast<int>(decomps.size()) != symbol.arity()) {
    throw Error(ErrorCode::ArityMismatch, "symbol arity " + std::to_string(symbol.arity()) + " vs " +
                                              std::to_string(decomps.size()) + " decompositions");
  }
  std::vector<std::size_t> extents;
  std::vector<std::vector<double>> spectra;
  std::size_t total = 1;
  for (const auto& d : decomps) {
    extents.push_back(d.get().cluster_count());
    spectra.push_back(d.get().eigenvalues());
    total *= extents.back();
  }
  const std::size_t arity = extents.size();
  auto tuple_at = [&](std::size_t flat) {
    std::vector<double> x(arity);
    for (std::size_t j = arity; j-- > 0;) {
      x[j] = spectra[j][flat % extents[j]];
      flat /= extents[j];
    }
    return x;
  };

  std::vector<Complex> values(total);
  if (symbol.symmetric()) {
    // Evaluate each multiset of eigenvalues once.
    std::map<std::vector<double>, std::size_t> key_index;
    std::vector<std::vector<double>> keys;
    std::vector<std::size_t> slot(total);
    for (std::size_t f = 0; f < total; ++f) {
      auto x = tuple_at(f);
      std::sort(x.begin(), x.end());
      auto [it, inserted] = key_index.try_emplace(x, keys.size());
      if (inserted) keys.push_back(std::move(x));
      slot[f] = it->second;
    }
    std::vector<Complex> unique(keys.size());
    parallel_for(keys.size(), options.threads, [&](std::size_t i) { unique[i] = symbol(keys[i]); });
    for (std::size_t f = 0; f < total; ++f) values[f] = unique[slot[f]];
  } else {
    parallel_for(total, options.threads, [&](std::size_t f) { values[f] = symbol(tuple_at(f)); });
  }
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::EvaluationDomain, "symbol is not finite on the spectral grid");
  }
  return SymbolGrid(std::move(extents), std::move(values));
}

// --------------------------------------------------------------- evaluation

Matrix moi_evaluate(const SymbolGrid& grid, const MoiOperands& ops) {
  const auto k = static_cast<std::size_t>(ops.order());
  const auto extents = grid.extents();
  if (extents.size() != k + 1) throw Error(ErrorCode::ArityMismatch, "grid arity does not match operands");
  for (std::size_t j = 0; j <= k; ++j) {
    if (extents[j] != ops.decomposition(j).cluster_count())
      throw Error(ErrorCode::DimensionMismatch, "grid extent does not match the spectrum of slot " + std::to_string(j));
  }
  const std::size_t n = ops.dimension();
  const auto values = grid.values();
  const auto middles = ops.middles();
  Matrix result(n);

  // Lexicographic over (i_1..i_k); the last slot is folded into one
  // weighted projection sum per prefix.
  auto recurse = [&](auto&& self, std::size_t slot, const Matrix& left, std::size_t offset) -> void {
    const auto& d = ops.decomposition(slot);
    if (slot == k) {
      Matrix weighted(n);
      bool any = false;
      for (std::size_t i = 0; i < extents[k]; ++i) {
        const Complex phi = values[offset * extents[k] + i];
        if (phi == Complex(0.0)) continue;
        any = true;
        const auto src = d.projection(i).data();
        auto dst = weighted.data();
        for (std::size_t e = 0; e < src.size(); ++e) dst[e] += phi * src[e];
      }
      if (any) result.add_product(left, weighted);
      return;
    }
    for (std::size_t i = 0; i < extents[slot]; ++i) {
      const Matrix next = (slot == 0) ? d.projection(i) * middles[0] : (left * d.projection(i)) * middles[slot];
      self(self, slot + 1, next, offset * extents[slot] + i);
    }
  };
  recurse(recurse, 0, Matrix(), 0);
  return result;
}

Matrix moi_evaluate(const MoiSymbol& symbol, const MoiOperands& ops, const MoiOptions& options) {
  require_arity(symbol, ops.order());
  return moi_evaluate(evaluate_symbol_grid(symbol, ops.decompositions(), options), ops);
}

Matrix moi_separated(std::span<const SeparatedTerm> terms, const MoiOperands& ops) {
  const auto k = static_cast<std::size_t>(ops.order());
  Matrix acc(ops.dimension());
  for (const auto& term : terms) {
    if (term.factors.size() != k + 1) throw Error(ErrorCode::ArityMismatch, "separated term has the wrong arity");
    Matrix m = functional_calculus(term.factors[0], ops.decomposition(0));
    for (std::size_t j = 0; j < k; ++j) {
      m = m * ops.middles()[j];
      m = m * functional_calculus(term.factors[j + 1], ops.decomposition(j + 1));
    }
    m *= term.weight;
    acc += m;
  }
  return acc;
}

Matrix moi_polynomial(int n, std::span<const Matrix> a, std::span<const Matrix> b) {
  if (b.empty()) throw Error(ErrorCode::ArityMismatch, "moi_polynomial needs k >= 1");
  if (a.size() != b.size() + 1) throw Error(ErrorCode::ArityMismatch, "need k + 1 base matrices for k middles");
  const std::size_t dim = a.front().size();
  for (const auto& m : a) require_same_size(m, a.front(), "moi_polynomial base");
  for (const auto& m : b) require_same_size(m, a.front(), "moi_polynomial middle");
  const int k = static_cast<int>(b.size());
  if (n < k) return Matrix(dim);
  const auto top = static_cast<std::size_t>(n - k);

  auto powers_of = [&](const Matrix& x) {
    std::vector<Matrix> p{Matrix::identity(dim)};
    for (std::size_t g = 1; g <= top; ++g) p.push_back(p.back() * x);
    return p;
  };
  // tail[g] = sum over compositions of g of the product from slot j on.
  std::vector<Matrix> tail = powers_of(a.back());
  for (std::size_t j = b.size(); j-- > 0;) {
    const auto pw = powers_of(a[j]);
    std::vector<Matrix> mid;
    mid.reserve(top + 1);
    for (std::size_t g = 0; g <= top; ++g) mid.push_back(b[j] * tail[g]);
    std::vector<Matrix> next;
    next.reserve(top + 1);
    for (std::size_t g = 0; g <= top; ++g) {
      Matrix acc(dim);
      for (std::size_t h = 0; h <= g; ++h) acc.add_product(pw[h], mid[g - h]);
      next.push_back(std::move(acc));
    }
    tail = std::move(next);
  }
  return tail[top];
}

Matrix moi_polynomial(int n, const MoiOperands& ops) {
  std::vector<Matrix> a;
  for (const auto& d : ops.decompositions()) a.push_back(d.get().source() ? *d.get().source() : d.get().reconstruct());
  return moi_polynomial(n, a, ops.middles());
}

Matrix moi_wiener(const WienerAtomic& f, const MoiOperands& ops, const SimplexQuadratureRule& rule) {
  const int k = ops.order();
  if (rule.dimension() != k) throw Error(ErrorCode::DimensionMismatch, "simplex rule dimension must equal k");
  const std::size_t n = ops.dimension();
  Matrix acc(n);
  for (const auto& atom : f.atoms()) {
    if (atom.frequency == 0.0) continue;  // (i xi)^k = 0 for k >= 1
    const Complex coeff = atom.weight * i_power(k) * std::pow(atom.frequency, k);
    const double xi = atom.frequency;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto t = rule.node(q);
      auto phase = [&](std::size_t slot) {
        const double s = t[slot] * xi;
        return functional_calculus([s](double x) { return std::polar(1.0, s * x); }, ops.decomposition(slot));
      };
      Matrix m = phase(0);
      for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
        m = m * ops.middles()[j];
        m = m * phase(j + 1);
      }
      m *= coeff * rule.weight(q);
      acc += m;
    }
  }
  return acc;
}

// ------------------------------------------------------------- perturbation

PerturbationSides perturbation_sides(const ScalarFunction& f, const Matrix& a, const Matrix& b,
                                     const PerturbationOptions& options) {
  require_same_size(a, b, "perturbation formula");
  const auto da = hermitian_eigendecompose(a, options.eigensolver);
  const auto db = hermitian_eigendecompose(b, options.eigensolver);
  const Matrix fa = functional_calculus(f, da);
  Matrix difference = fa - functional_calculus(f, db);
  const auto symbol = MoiSymbol::divided_difference(f, 1, options.divided_difference);
  const MoiOperands ops({da, db}, {a - b});
  Matrix integral = moi_evaluate(symbol, ops);
  return {std::move(difference), std::move(integral), 1.0 + fa.frobenius_norm()};
}

VerificationReport moi_perturbation(const ScalarFunction& f, const Matrix& a, const Matrix& b,
                                    const PerturbationOptions& options) {
  const auto sides = perturbation_sides(f, a, b, options);
  VerificationReport report("perturbation_formula");
  report.add(equality_check("perturbation_formula", "f(A) - f(B) = (I^{A,B} f^[1])[A - B]",
                            sides.difference.frobenius_norm(), sides.integral.frobenius_norm(),
                            frobenius_distance(sides.difference, sides.integral),
                            options.relative_tolerance * sides.scale));
  return report;
}

// -------------------------------------------------------------- norm bounds

VerificationReport moi_opnorm_bound_check(const MoiSymbol& symbol, const MoiOperands& ops, int probes,
                                          std::uint64_t seed) {
  if (probes < 1) throw Error(ErrorCode::InvalidArgument, "need at least one probe");
  require_arity(symbol, ops.order());
  const auto grid = evaluate_symbol_grid(symbol, ops.decompositions());
  const std::size_t n = ops.dimension();
  const int k = ops.order();
  const double bound = std::pow(static_cast<double>(n), k) * grid.max_abs();

  auto normalized = [](Matrix m) {
    const double norm = operator_norm(m);
    if (norm > 0.0) m *= 1.0 / norm;
    return m;
  };
  double estimate = 0.0;
  std::vector<Matrix> dirs;
  for (const auto& b : ops.middles()) dirs.push_back(normalized(b));
  estimate = operator_norm(moi_evaluate(grid, ops.with_middles(dirs)));

  CounterRng rng(seed, 0x4d4f49ULL);
  for (int p = 1; p < probes; ++p) {
    for (auto& b : dirs) b = normalized(random_complex_matrix(rng, n));
    estimate = std::max(estimate, operator_norm(moi_evaluate(grid, ops.with_middles(dirs))));
  }
  VerificationReport report("moi_opnorm_bound");
  report.add(bound_check("moi_opnorm_bound", "||I^A phi|| <= n^k max |phi| on the spectral grid", estimate, bound,
                         1e-10 * (1.0 + bound)));
  return report;
}

IpdBound ipd_upper_bound(const MoiSymbol& symbol, const MoiOperands& ops) {
  require_arity(symbol, ops.order());
  const int k = ops.order();
  if (const auto& f = symbol.source_function()) {
    if (const auto* w = f->wiener()) return {wiener_iptp_bound(*w, k), "wiener"};
    if (const auto* p = f->polynomial()) {
      double r = 0.0;
      for (const auto& d : ops.decompositions())
        for (double x : d.get().eigenvalues()) r = std::max(r, std::abs(x));
      return {poly_divided_difference_bound(*p, k, r), "polynomial"};
    }
  }
  if (const auto* terms = symbol.separated_form()) {
    double acc = 0.0;
    for (const auto& t : *terms) {
      double prod = std::abs(t.weight);
      for (std::size_t j = 0; j < t.factors.size(); ++j) {
        double sup = 0.0;
        for (double x : ops.decomposition(j).eigenvalues()) sup = std::max(sup, std::abs(t.factors[j](x)));
        prod *= sup;
      }
      acc += prod;
    }
    return {acc, "separated"};
  }
  // Indicator decomposition phi = sum_lambda phi(lambda) prod_j 1_{lambda_j}.
  return {evaluate_symbol_grid(symbol, ops.decompositions()).l1_norm(), "grid_l1"};
}

}  // namespace moikit

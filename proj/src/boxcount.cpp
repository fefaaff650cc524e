#include "qfc/boxcount.hpp"

#include <omp.h>

#include <algorithm>

namespace qfc {

namespace {

// Coefficients of the column polynomial, reduced once per instance.
struct ColumnSolver {
  const PrimeModulus& p;
  std::uint64_t a, b, c, d, e, f;  // f already has lambda subtracted
  std::uint64_t x0, y0;            // K mod p, L mod p
  std::uint64_t m;
  std::uint64_t inv2c = 0;

  ColumnSolver(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p_, const Box& box)
      : p(p_),
        a(p_.reduce(q.a)),
        b(p_.reduce(q.b)),
        c(p_.reduce(q.c)),
        d(p_.reduce(q.d)),
        e(p_.reduce(q.e)),
        f(p_.reduce(BigInt(q.f - lambda))),
        x0(p_.reduce(box.K)),
        y0(p_.reduce(box.L)),
        m(static_cast<std::uint64_t>(box.M)) {
    if (c != 0) inv2c = p.inv(p.add(c, c));
  }

  struct Column {
    int nroots = 0;          // -1 means every y
    std::uint64_t roots[2];  // residues of y
  };

  // Column i covers x = K + i, 1 <= i <= M.
  Column solve(std::uint64_t i) const {
    const std::uint64_t x = p.add(x0, i % p.value());
    const std::uint64_t lin = p.add(p.mul(b, x), e);
    const std::uint64_t cst = p.add(p.add(p.mul(a, p.mul(x, x)), p.mul(d, x)), f);
    Column col;
    if (c != 0) {
      const std::uint64_t disc = p.sub(p.mul(lin, lin), p.mul(p.mul(4 % p.value(), c), cst));
      std::uint64_t sq[2];
      const int n = p.sqrt(disc, sq);
      for (int k = 0; k < n; ++k) col.roots[k] = p.mul(p.sub(sq[k], lin), inv2c);
      col.nroots = n;
    } else if (lin != 0) {
      col.roots[0] = p.mul(p.neg(cst), p.inv(lin));
      col.nroots = 1;
    } else {
      col.nroots = cst == 0 ? -1 : 0;
    }
    return col;
  }

  // Number of j in [1, M] with L + j = root, i.e. j = root - L.
  std::uint64_t count(const Column& col) const {
    if (col.nroots < 0) return m;
    std::uint64_t total = 0;
    for (int k = 0; k < col.nroots; ++k) total += count_class_in_prefix(p.sub(col.roots[k], y0), p.value(), m);
    return total;
  }

  void append(const Column& col, std::uint64_t i, const Box& box, std::vector<Point>& out) const {
    const BigInt x = box.K + BigInt(static_cast<unsigned long>(i));
    if (col.nroots < 0) {
      for (std::uint64_t j = 1; j <= m; ++j) out.emplace_back(x, box.L + BigInt(static_cast<unsigned long>(j)));
      return;
    }
    for (int k = 0; k < col.nroots; ++k) {
      const std::uint64_t r = p.sub(col.roots[k], y0);
      for (std::uint64_t j = r == 0 ? p.value() : r; j <= m; j += p.value()) {
        out.emplace_back(x, box.L + BigInt(static_cast<unsigned long>(j)));
      }
    }
  }
};

void finish(CountResult& res) {
  if (res.solutions) std::sort(res.solutions->begin(), res.solutions->end());
}

}  // namespace

CountResult count_exact_serial(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p,
                               const Box& box, bool collect) {
  const ColumnSolver solver(q, lambda, p, box);
  CountResult res;
  if (collect) res.solutions.emplace();
  for (std::uint64_t i = 1; i <= solver.m; ++i) {
    const auto col = solver.solve(i);
    res.count += solver.count(col);
    res.degenerate_row |= col.nroots < 0;
    if (collect) solver.append(col, i, box, *res.solutions);
  }
  finish(res);
  return res;
}

CountResult count_exact(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p, const Box& box,
                        bool collect) {
  const ColumnSolver solver(q, lambda, p, box);
  const auto m = static_cast<std::int64_t>(solver.m);
  CountResult res;
  std::uint64_t total = 0;
  bool degenerate = false;
  if (!collect) {
#pragma omp parallel for schedule(static) reduction(+ : total) reduction(|| : degenerate)
    for (std::int64_t i = 1; i <= m; ++i) {
      const auto col = solver.solve(static_cast<std::uint64_t>(i));
      total += solver.count(col);
      degenerate = degenerate || col.nroots < 0;
    }
  } else {
    std::vector<std::vector<Point>> parts(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel reduction(+ : total) reduction(|| : degenerate)
    {
      auto& local = parts[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
      for (std::int64_t i = 1; i <= m; ++i) {
        const auto col = solver.solve(static_cast<std::uint64_t>(i));
        total += solver.count(col);
        degenerate = degenerate || col.nroots < 0;
        solver.append(col, static_cast<std::uint64_t>(i), box, local);
      }
    }
    res.solutions.emplace();
    for (auto& part : parts) {
      res.solutions->insert(res.solutions->end(), std::make_move_iterator(part.begin()),
                            std::make_move_iterator(part.end()));
    }
  }
  res.count = total;
  res.degenerate_row = degenerate;
  finish(res);
  return res;
}

CountResult count_naive(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p, const Box& box,
                        bool collect) {
  if (box.M > kNaiveGuard) throw Error(Errc::GuardExceeded, "naive counter limited to M <= 10^4");
  const std::uint64_t a = p.reduce(q.a), b = p.reduce(q.b), c = p.reduce(q.c);
  const std::uint64_t d = p.reduce(q.d), e = p.reduce(q.e), f = p.reduce(q.f);
  const std::uint64_t target = p.reduce(lambda);
  const std::uint64_t x0 = p.reduce(box.K), y0 = p.reduce(box.L);
  CountResult res;
  if (collect) res.solutions.emplace();
  for (std::int64_t i = 1; i <= box.M; ++i) {
    const std::uint64_t x = p.add(x0, p.reduce(i));
    const std::uint64_t ax2 = p.mul(a, p.mul(x, x)), bx = p.mul(b, x), dx = p.mul(d, x);
    for (std::int64_t j = 1; j <= box.M; ++j) {
      const std::uint64_t y = p.add(y0, p.reduce(j));
      std::uint64_t v = p.add(ax2, p.mul(bx, y));
      v = p.add(v, p.mul(c, p.mul(y, y)));
      v = p.add(v, dx);
      v = p.add(v, p.mul(e, y));
      v = p.add(v, f);
      if (v == target) {
        ++res.count;
        if (collect) res.solutions->emplace_back(box.K + big(i), box.L + big(j));
      }
    }
  }
  finish(res);
  return res;
}

}  // namespace qfc

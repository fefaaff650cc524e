#include "qfc/quadform.hpp"

#include <sstream>

namespace qfc {

QuadraticForm::QuadraticForm(Unchecked, BigInt a_, BigInt b_, BigInt c_, BigInt d_, BigInt e_, BigInt f_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)), e(std::move(e_)), f(std::move(f_)) {}

QuadraticForm::QuadraticForm(BigInt a_, BigInt b_, BigInt c_, BigInt d_, BigInt e_, BigInt f_)
    : QuadraticForm(Unchecked{}, std::move(a_), std::move(b_), std::move(c_), std::move(d_), std::move(e_),
                    std::move(f_)) {
  if (discriminant() == 0) throw Error(Errc::DegenerateForm, "b^2 - 4ac = 0 for " + to_string());
}

QuadraticForm QuadraticForm::allow_degenerate(BigInt a, BigInt b, BigInt c, BigInt d, BigInt e, BigInt f) {
  return QuadraticForm(Unchecked{}, std::move(a), std::move(b), std::move(c), std::move(d), std::move(e),
                       std::move(f));
}

BigInt QuadraticForm::evaluate(const BigInt& x, const BigInt& y) const {
  return a * x * x + b * x * y + c * y * y + d * x + e * y + f;
}

std::uint64_t QuadraticForm::evaluate_mod(std::uint64_t x, std::uint64_t y, const PrimeModulus& p) const {
  const std::uint64_t ar = p.reduce(a), br = p.reduce(b), cr = p.reduce(c);
  const std::uint64_t dr = p.reduce(d), er = p.reduce(e), fr = p.reduce(f);
  std::uint64_t v = p.mul(ar, p.mul(x, x));
  v = p.add(v, p.mul(br, p.mul(x, y)));
  v = p.add(v, p.mul(cr, p.mul(y, y)));
  v = p.add(v, p.mul(dr, x));
  v = p.add(v, p.mul(er, y));
  return p.add(v, fr);
}

std::string QuadraticForm::to_string() const {
  std::ostringstream os;
  os << a << "," << b << "," << c << "," << d << "," << e << "," << f;
  return os.str();
}

Box::Box(BigInt K_, BigInt L_, std::int64_t M_) : K(std::move(K_)), L(std::move(L_)), M(M_) {
  if (M < 1) throw Error(Errc::EmptyInterval, "box side M must be >= 1");
}

std::string_view kind_name(StandardKind k) noexcept {
  switch (k) {
    case StandardKind::Norm: return "Norm";
    case StandardKind::Hyperbolic: return "Hyperbolic";
    case StandardKind::Difference: return "Difference";
  }
  return "?";
}

std::pair<BigInt, BigInt> AffineMap::apply(const BigInt& x, const BigInt& y) const {
  return {ax * x + bx * y + cx, ay * x + by * y + cy};
}

std::optional<std::pair<BigInt, BigInt>> AffineMap::invert(const BigInt& X, const BigInt& Y) const {
  const BigInt delta = det();
  const BigInt u = X - cx, v = Y - cy;
  const BigInt xn = u * by - bx * v;
  const BigInt yn = ax * v - ay * u;
  if (!divides(delta, xn) || !divides(delta, yn)) return std::nullopt;
  return std::pair<BigInt, BigInt>{xn / delta, yn / delta};
}

static Interval row_image(const BigInt& alpha, const BigInt& beta, const BigInt& gamma, const Box& box) {
  auto span = [](const BigInt& coef, const BigInt& lo, const BigInt& hi) {
    return sgn(coef) >= 0 ? std::pair<BigInt, BigInt>{coef * lo, coef * hi}
                          : std::pair<BigInt, BigInt>{coef * hi, coef * lo};
  };
  auto [xl, xh] = span(alpha, box.x_lo(), box.x_hi());
  auto [yl, yh] = span(beta, box.y_lo(), box.y_hi());
  return {xl + yl + gamma, xh + yh + gamma};
}

Interval AffineMap::x_image(const Box& box) const { return row_image(ax, bx, cx, box); }
Interval AffineMap::y_image(const Box& box) const { return row_image(ay, by, cy, box); }

std::uint64_t StandardInstance::residual(const BigInt& X, const BigInt& Y, const PrimeModulus& p) const {
  const std::uint64_t xr = p.reduce(X), yr = p.reduce(Y), m = p.reduce(mu);
  std::uint64_t lhs = 0;
  switch (kind) {
    case StandardKind::Norm:
      lhs = p.sub(p.mul(xr, xr), p.mul(p.reduce(D), p.mul(yr, yr)));
      break;
    case StandardKind::Hyperbolic:
      lhs = p.mul(xr, yr);
      break;
    case StandardKind::Difference:
      lhs = p.sub(p.mul(xr, xr), p.mul(yr, yr));
      break;
  }
  return p.sub(lhs, m);
}

bool is_absolutely_irreducible(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p) {
  // Conic matrix [[2a, b, d], [b, 2c, e], [d, e, 2(f - lambda)]] has full rank mod p.
  const BigInt a2 = 2 * q.a, c2 = 2 * q.c, f2 = 2 * (q.f - lambda);
  const BigInt det = a2 * (c2 * f2 - q.e * q.e) - q.b * (q.b * f2 - q.e * q.d) + q.d * (q.b * q.e - c2 * q.d);
  return p.reduce(det) != 0;
}

SquarefreeSplit squarefree_extract(const BigInt& D) {
  if (D == 0) throw Error(Errc::DegenerateForm, "square-free part of 0");
  BigInt m = abs(D);
  BigInt core = 1, k = 1;
  for (BigInt i = 2; i * i <= m; ++i) {
    unsigned exp = 0;
    while (divides(i, m)) {
      m /= i;
      ++exp;
    }
    for (unsigned j = 0; j < exp / 2; ++j) k *= i;
    if (exp % 2) core *= i;
  }
  core *= m;
  if (sgn(D) < 0) core = -core;
  return {core, k};
}

namespace {

// v / g when exact, else v * g^{-1} (mod p) as a signed representative.
BigInt divide_mod(const BigInt& v, const BigInt& g, const PrimeModulus& p) {
  if (divides(g, v)) return v / g;
  const std::uint64_t ginv = p.inv(p.reduce(g));
  return big(signed_rep(p.mul(p.reduce(v), ginv), p.value()));
}

BigInt residue_big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace

StandardInstance standardize(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p,
                             const Box& box) {
  const BigInt D = q.discriminant();
  if (D == 0) throw Error(Errc::DegenerateForm, "discriminant is 0");
  if (!is_absolutely_irreducible(q, lambda, p)) {
    throw Error(Errc::ReducibleModP, "Q - lambda factors over the algebraic closure of F_p");
  }
  if (p.reduce(D) == 0) throw Error(Errc::SmallPrime, "p divides the discriminant " + D.get_str());

  StandardInstance inst;
  inst.swapped = false;
  inst.y_stretch = 1;

  const std::uint64_t ar = p.reduce(q.a), cr = p.reduce(q.c);
  if (ar != 0 || cr != 0) {
    // Complete the square in the variable whose square coefficient is a unit.
    const bool swapped = ar == 0;
    const BigInt& A = swapped ? q.c : q.a;
    const BigInt& Bc = q.b;
    const BigInt& Dl = swapped ? q.e : q.d;
    const BigInt& E = swapped ? q.d : q.e;
    const BigInt& F = q.f;

    // 4A Q = X^2 - (D v^2 + 2 Bv v + Cv),  X = 2A u + Bc v + Dl,  (u, v) = (x, y) or (y, x).
    const BigInt Bv = Bc * Dl - 2 * A * E;
    const BigInt Cv = Dl * Dl - 4 * A * F;
    const std::uint64_t Dinv = p.inv(p.reduce(D));
    // D v^2 + 2 Bv v = D (v + Bv/D)^2 - Bv^2/D.
    const BigInt w0 = divides(D, Bv) ? BigInt(Bv / D) : big(signed_rep(p.mul(p.reduce(Bv), Dinv), p.value()));
    const std::uint64_t bv = p.reduce(Bv);
    std::uint64_t mu = p.add(p.mul(p.reduce(4 * A), p.reduce(lambda)), p.reduce(Cv));
    mu = p.sub(mu, p.mul(p.mul(bv, bv), Dinv));
    BigInt s = 4 * A;

    const SquarefreeSplit split = squarefree_extract(D);
    const BigInt& k = split.k;

    // Rows before reduction: X = 2A u + Bc v + Dl,  Y = k v + k w0.
    BigInt g = gcd_big(gcd_big(2 * A, Bc), k);
    BigInt xu = 2 * A / g, xv = Bc / g, xc = divide_mod(Dl, g, p);
    BigInt yv = k / g, yc = divide_mod(k * w0, g, p);
    if (g != 1) {
      const std::uint64_t ginv = p.inv(p.reduce(g));
      const std::uint64_t ginv2 = p.mul(ginv, ginv);
      mu = p.mul(mu, ginv2);
      s = divides(g * g, s) ? BigInt(s / (g * g)) : big(signed_rep(p.mul(p.reduce(s), ginv2), p.value()));
    }

    inst.kind = split.core == 1 ? StandardKind::Difference : StandardKind::Norm;
    inst.D = split.core;
    inst.mu = residue_big(mu);
    inst.scale = s;
    inst.y_stretch = k;
    inst.swapped = swapped;
    if (!swapped) {
      inst.map = {xu, xv, xc, 0, yv, yc};
    } else {
      inst.map = {xv, xu, xc, yv, 0, yc};
    }
  } else {
    // a = c = 0 (mod p):  b Q = (bx + e)(by + d) - ed + bf.
    inst.kind = StandardKind::Hyperbolic;
    inst.D = 0;
    const std::uint64_t mu = p.add(p.mul(p.reduce(q.b), p.reduce(lambda)),
                                   p.sub(p.mul(p.reduce(q.e), p.reduce(q.d)), p.mul(p.reduce(q.b), p.reduce(q.f))));
    inst.mu = residue_big(mu);
    inst.scale = q.b;
    inst.map = {q.b, 0, q.e, 0, q.b, q.d};
  }

  if (p.reduce(inst.scale) == 0) throw Error(Errc::SmallPrime, "p divides the scaling factor");
  if (inst.kind != StandardKind::Norm && p.reduce(inst.mu) == 0) {
    throw Error(Errc::ReducibleModP, "mu = 0 (mod p) in a product-shaped instance");
  }
  inst.x_interval = inst.map.x_image(box);
  inst.y_interval = inst.map.y_image(box);
  return inst;
}

}  // namespace qfc

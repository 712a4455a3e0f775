#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dualgap/extreal.hpp"
#include "dualgap/model.hpp"
#include "dualgap/pell.hpp"

// Certified sequences of lattice points. A witness is a generator that can
// produce arbitrarily many points of the ground set together with exact limit
// values of linear functionals along the sequence. Generators live in reduced
// engine coordinates and carry an affine lattice map back into the ambient
// space.

namespace dualgap {

struct AffineEmbed {
  std::vector<Point> cols;  // image of each reduced basis vector, ambient size
  Point base;

  static AffineEmbed identity(int n) {
    AffineEmbed e;
    e.base.assign(n, BigInt(0));
    for (int j = 0; j < n; ++j) {
      Point c(n, BigInt(0));
      c[j] = 1;
      e.cols.push_back(c);
    }
    return e;
  }

  int ambient_dim() const { return static_cast<int>(base.size()); }
  int reduced_dim() const { return static_cast<int>(cols.size()); }

  Point apply(const Point& u) const {
    if (static_cast<int>(u.size()) != reduced_dim()) throw DimensionError("embed: bad point");
    Point out = base;
    for (size_t j = 0; j < cols.size(); ++j)
      for (size_t i = 0; i < out.size(); ++i) out[i] += cols[j][i] * u[j];
    return out;
  }

  QVec pullback(const QVec& g) const {
    QVec out;
    for (const Point& c : cols) out.push_back(dot(g, c));
    return out;
  }

  // this(inner(u))
  AffineEmbed compose(const AffineEmbed& inner) const {
    AffineEmbed e;
    e.base = apply(inner.base);
    for (const Point& c : inner.cols) {
      Point img(base.size(), BigInt(0));
      for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < img.size(); ++i) img[i] += cols[j][i] * c[j];
      e.cols.push_back(img);
    }
    return e;
  }
};

// x_k = base + k*step
struct RayGen {
  Point base, step;
};

// x_k = x0 + k*stride, y_k = floor(alpha + beta*x_k); stride may be negative
struct FloorLineGen {
  BigInt x0, stride;
  Quad alpha, beta;
};

// x_k = u0 + q*uq + p*up over convergents p/q of sqrt(2), restricted to
// indices of one parity starting at `first`
struct PellGen {
  Point u0, uq, up;
  int parity = 0;
  int first = 0;
};

class WitnessSequence {
 public:
  WitnessSequence(RayGen g, AffineEmbed e) : gen_(std::move(g)), embed_(std::move(e)) {}
  WitnessSequence(FloorLineGen g, AffineEmbed e) : gen_(std::move(g)), embed_(std::move(e)) {}
  WitnessSequence(PellGen g, AffineEmbed e) : gen_(std::move(g)), embed_(std::move(e)) {}

  std::vector<Point> points(int count) const {
    std::vector<Point> out;
    if (const RayGen* g = std::get_if<RayGen>(&gen_)) {
      Point u = g->base;
      for (int k = 0; k < count; ++k) {
        out.push_back(embed_.apply(u));
        for (size_t i = 0; i < u.size(); ++i) u[i] += g->step[i];
      }
    } else if (const FloorLineGen* g = std::get_if<FloorLineGen>(&gen_)) {
      BigInt x = g->x0;
      for (int k = 0; k < count; ++k) {
        out.push_back(embed_.apply({x, qfloor(g->alpha + g->beta * Quad(x))}));
        x += g->stride;
      }
    } else {
      const PellGen& pg = std::get<PellGen>(gen_);
      auto cs = pell_convergents(pg.first + 2 * count);
      for (int k = 0; k < count; ++k) {
        const Convergent& c = cs[pg.first + 2 * k];
        Point u = pg.u0;
        for (size_t i = 0; i < u.size(); ++i) u[i] += c.q * pg.uq[i] + c.p * pg.up[i];
        out.push_back(embed_.apply(u));
      }
    }
    return out;
  }

  // exact limit of g.x_k along the sequence; nullopt when it does not settle
  std::optional<ExtReal> limit_of(const QVec& g) const {
    QVec g2 = embed_.pullback(g);
    if (const RayGen* r = std::get_if<RayGen>(&gen_)) {
      int s = dot(g2, r->step).sign();
      if (s > 0) return ExtReal::pos_inf();
      if (s < 0) return ExtReal::neg_inf();
      return ExtReal(Quad(dot(g, embed_.apply(r->base))));
    }
    if (const FloorLineGen* f = std::get_if<FloorLineGen>(&gen_)) {
      Quad slope = g2[0] + g2[1] * f->beta;
      int s = slope.sign() * sign_of(f->stride);
      if (s > 0) return ExtReal::pos_inf();
      if (s < 0) return ExtReal::neg_inf();
      // slope zero with a y-weight leaves the oscillating fractional part
      if (g2[1].sign() != 0) return std::nullopt;
      return ExtReal(Quad(dot(g, embed_.apply({BigInt(0), BigInt(0)}))));
    }
    const PellGen& p = std::get<PellGen>(gen_);
    Quad s = dot(g2, p.uq) + Quad::sqrt_of(2) * dot(g2, p.up);
    if (s.sign() > 0) return ExtReal::pos_inf();
    if (s.sign() < 0) return ExtReal::neg_inf();
    return ExtReal(Quad(dot(g, embed_.apply(p.u0))));
  }

  // g.x_k grows like rate * rho_k + O(1) for a fixed rho_k -> +inf, so the
  // sign of the rate decides divergence and rate 0 means the values stay
  // bounded (though possibly without a limit)
  Quad growth_rate(const QVec& g) const {
    QVec g2 = embed_.pullback(g);
    if (const RayGen* r = std::get_if<RayGen>(&gen_)) return dot(g2, r->step);
    if (const FloorLineGen* f = std::get_if<FloorLineGen>(&gen_))
      return (g2[0] + g2[1] * f->beta) * Quad(f->stride);
    const PellGen& p = std::get<PellGen>(gen_);
    return dot(g2, p.uq) + Quad::sqrt_of(2) * dot(g2, p.up);
  }

  const AffineEmbed& embed() const { return embed_; }

 private:
  std::variant<RayGen, FloorLineGen, PellGen> gen_;
  AffineEmbed embed_;
};

}  // namespace dualgap
